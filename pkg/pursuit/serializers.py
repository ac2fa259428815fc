from rest_framework import serializers

from .game import Side


class GamePositionSerializer(serializers.Serializer):
    cops = serializers.ListField(child=serializers.IntegerField())
    robber = serializers.IntegerField()
    to_move = serializers.ChoiceField(choices=Side.choices)


class SolveSummarySerializer(serializers.Serializer):
    cop_number = serializers.IntegerField(source='value', allow_null=True)
    exceeds = serializers.BooleanField()
    k_max = serializers.IntegerField()
    placement = serializers.ListField(child=serializers.IntegerField(), allow_null=True)


class CertificateSerializer(serializers.Serializer):
    first = serializers.IntegerField()
    repeat = serializers.IntegerField()

    def to_representation(self, instance):
        first, repeat = instance
        return {'first': first, 'repeat': repeat}


class GameTraceSerializer(serializers.Serializer):
    placement_cops = serializers.ListField(child=serializers.IntegerField())
    placement_robber = serializers.IntegerField()
    snapshots = GamePositionSerializer(many=True)
    outcome = serializers.CharField()
    half_moves = serializers.IntegerField()
    certificate = CertificateSerializer(allow_null=True)
