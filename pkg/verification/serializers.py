from rest_framework import serializers

from .models import SuiteRecord, SuiteRun


class SuiteRecordSerializer(serializers.ModelSerializer):
    class Meta:
        model = SuiteRecord
        exclude = ('run',)


class SuiteRunSerializer(serializers.ModelSerializer):
    suite_display = serializers.CharField(source='get_suite_display', read_only=True)

    class Meta:
        model = SuiteRun
        fields = '__all__'


class SuiteRunDetailSerializer(SuiteRunSerializer):
    violations = serializers.SerializerMethodField()

    def get_violations(self, obj):
        return SuiteRecordSerializer(obj.records.filter(violation=True), many=True).data


class InstanceRecordSerializer(serializers.Serializer):
    """In-memory records, as printed by ``verify --replay``."""
    suite = serializers.CharField()
    seed = serializers.IntegerField()
    n = serializers.IntegerField()
    arcs = serializers.IntegerField()
    transform = serializers.CharField()
    c_before = serializers.IntegerField(allow_null=True)
    c_after = serializers.IntegerField(allow_null=True)
    verdicts = serializers.DictField()
    micros = serializers.IntegerField()
    violation = serializers.BooleanField()
    error = serializers.CharField()
