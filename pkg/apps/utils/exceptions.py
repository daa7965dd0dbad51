from dataclasses import dataclass, replace

from django.core.exceptions import ValidationError

from .constants import EXIT_LOGICAL, EXIT_USAGE


@dataclass(frozen=True)
class SourcePosition:
    # Posición 1-based dentro de un archivo o texto.
    line: int
    column: int
    source: str | None = None

    def __str__(self):
        where = f"{self.line}:{self.column}"
        if self.source:
            return f"{self.source}:{where}"
        return where


class DefectOntError(ValidationError):
    """
    Error base de la herramienta.

    Hereda de ValidationError para seguir la convención del proyecto:
    mensaje legible, `code` estable y `params` opcionales.
    La categoría es una clave corta en inglés que el CLI imprime.
    """

    category = "error"
    default_code = "invalid"
    exit_code = EXIT_USAGE

    def __init__(self, message, code=None, position=None, params=None):
        super().__init__(message, code=code or self.default_code, params=params)
        self.position = position

    @property
    def text(self):
        if self.params:
            return self.message % self.params
        return self.message

    def located(self, source):
        # Devuelve el mismo error con el nombre de archivo en la posición
        if self.position is None or self.position.source:
            return self
        error = type(self)(
            self.message,
            code=self.code,
            position=replace(self.position, source=source),
            params=self.params,
        )
        return error

    def __str__(self):
        head = f"{self.category} [{self.code}]"
        if self.position is not None:
            head = f"{head} at {self.position}"
        return f"{head}: {self.text}"

    def __repr__(self):
        return f"{type(self).__name__}({str(self)!r})"


class ParseError(DefectOntError):
    # lexical, syntax, arity, undeclared, duplicate, kind-clash, literal, query
    category = "parse error"
    default_code = "syntax"


class WellFormednessError(DefectOntError):
    category = "well-formedness error"
    default_code = "ill-formed"


class LinkError(DefectOntError):
    # missing-module, import-cycle, kind-clash, unknown-name, collision
    category = "link error"
    default_code = "link"


class ReasonerError(DefectOntError):
    # unsupported, inconsistent, unknown-individual, resource-limit
    category = "reasoning error"
    default_code = "inconsistent"
    exit_code = EXIT_LOGICAL


class UnitError(DefectOntError):
    category = "unit error"
    default_code = "dimension-mismatch"
    exit_code = EXIT_LOGICAL


class QueryError(DefectOntError):
    # no-value, ambiguous-value
    category = "query error"
    default_code = "no-value"
    exit_code = EXIT_LOGICAL


class DiagnosisError(DefectOntError):
    # no-bridge, precondition, unknown-name
    category = "diagnosis error"
    default_code = "precondition"
    exit_code = EXIT_LOGICAL


class OracleError(DefectOntError):
    category = "oracle error"
    default_code = "fragment"
