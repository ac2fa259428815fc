from rest_framework import serializers

from .patterns import ObstructionKind


class CheckResultSerializer(serializers.Serializer):
    """Verdict of one pattern test: ``free`` means no witness exists."""

    test = serializers.CharField()
    k = serializers.IntegerField(allow_null=True, required=False)
    free = serializers.BooleanField()
    witness = serializers.ListField(child=serializers.IntegerField(), allow_null=True)


class ChainVerdictSerializer(serializers.Serializer):
    test = serializers.CharField()
    k = serializers.IntegerField()
    pk_subgraph_free = serializers.BooleanField()
    pk_star_free = serializers.BooleanField()
    pk_induced_free = serializers.BooleanField()
    holds = serializers.BooleanField()


class ObstructionSerializer(serializers.Serializer):
    test = serializers.CharField()
    kind = serializers.ChoiceField(choices=ObstructionKind.choices)
    witness = serializers.ListField(child=serializers.IntegerField(), allow_null=True)
    girth = serializers.IntegerField(allow_null=True)
    star_index = serializers.IntegerField(allow_null=True)
