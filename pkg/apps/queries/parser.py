"""
Parser de consultas: `instance? IND CONCEPT`, `instances? CONCEPT`,
`fillers? IND ROLE`, `value? IND ATTR UNIT`.

Reutiliza el tokenizador y el lector de expresiones de los módulos, así
que los errores llevan línea y columna dentro del texto de la consulta.
"""

import re

from apps.measures.models import REGISTRY
from apps.ontology.parser import (
    EOF,
    NAME,
    NEWLINE,
    ExpressionReader,
    TokenStream,
    tokenize,
)
from apps.utils.constants import KIND_ATTRIBUTE, KIND_INDIVIDUAL
from apps.utils.exceptions import ParseError, SourcePosition

from .models import FillersQuery, InstanceQuery, InstancesQuery, ValueQuery

HEAD_RE = re.compile(r"[ \t]*(instances|instance|fillers|value)\?")


class QueryReader(ExpressionReader):
    def instance_query(self):
        return InstanceQuery(self.name(KIND_INDIVIDUAL), self.concept())

    def instances_query(self):
        return InstancesQuery(self.concept())

    def fillers_query(self):
        return FillersQuery(self.name(KIND_INDIVIDUAL), self.role())

    def value_query(self):
        individual = self.name(KIND_INDIVIDUAL)
        attribute = self.name(KIND_ATTRIBUTE)
        unit = self.stream.expect(NAME, what="unit")
        if unit.value not in REGISTRY:
            raise ParseError(
                "Unidad desconocida %(unit)r",
                code="literal",
                position=unit.position,
                params={"unit": unit.value},
            )
        return ValueQuery(individual, attribute, unit.value)


def parse_query(text, kb):
    """Parsear una consulta y validar sus nombres contra kb"""
    head = HEAD_RE.match(text)
    if head is None:
        raise ParseError(
            "La consulta debe empezar con instance?, instances?, fillers? o value?",
            code="syntax",
            position=SourcePosition(1, 1),
        )
    # El '?' no es un carácter del léxico: se cambia por un espacio
    body = text[: head.end() - 1] + " " + text[head.end():]
    stream = TokenStream(tokenize(body))
    reader = QueryReader(stream)
    keyword = stream.expect(NAME).value
    query = getattr(reader, f"{keyword}_query")()
    while stream.at(NEWLINE):
        stream.next()
    stream.expect(EOF)
    reader.check_references(kb.kind_of)
    return query
