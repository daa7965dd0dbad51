from rest_framework import serializers


class MetricsSerializer(serializers.Serializer):
    classes = serializers.IntegerField()
    roles = serializers.IntegerField()
    attributes = serializers.IntegerField()
    individuals = serializers.IntegerField()
    axioms = serializers.IntegerField()
    tbox = serializers.IntegerField()
    rbox = serializers.IntegerField()
    abox = serializers.IntegerField()
    axiom_types = serializers.DictField(child=serializers.IntegerField())
    origins = serializers.DictField(child=serializers.IntegerField())
    expressivity = serializers.CharField()


class TaxonomySerializer(serializers.Serializer):
    """Resumen de una Taxonomy (usa Taxonomy.summary())"""

    classes = serializers.IntegerField()
    nodes = serializers.IntegerField()
    edges = serializers.IntegerField()
    top = serializers.ListField(child=serializers.CharField())
    unsatisfiable = serializers.ListField(child=serializers.CharField())
