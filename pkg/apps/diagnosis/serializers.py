from rest_framework import serializers


class DiagnosisSerializer(serializers.Serializer):
    defect = serializers.CharField()
    candidates = serializers.ListField(child=serializers.CharField())
    entailed = serializers.ListField(child=serializers.CharField())
    consistent = serializers.BooleanField()
