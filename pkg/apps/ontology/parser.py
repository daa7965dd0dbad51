import logging
import re
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation

from apps.measures.models import REGISTRY
from apps.utils.constants import (
    BOTTOM_KEYWORD,
    DATATYPE_DECIMAL,
    DATATYPE_STRING,
    KIND_ATTRIBUTE,
    KIND_CLASS,
    KIND_INDIVIDUAL,
    KIND_ROLE,
    RESERVED_NAMES,
    TOP_KEYWORD,
)
from apps.utils.exceptions import ParseError, SourcePosition

from .models import (
    BOTTOM,
    TOP,
    All,
    And,
    ClassAssertion,
    DataAssertion,
    Declaration,
    DisjointClasses,
    EquivalentClasses,
    InverseRole,
    Named,
    NamedRole,
    Nominal,
    Not,
    Or,
    RoleAssertion,
    RoleDomain,
    RoleRange,
    Some,
    SourceModule,
    SubClassOf,
    SubRoleOf,
)

logger = logging.getLogger(__name__)

# ---- Tokens ----
LPAREN, RPAREN, COLON, NAME, NUMBER, STRING, NEWLINE, EOF = (
    "'('", "')'", "':'", "name", "number", "string", "end of line", "end of input",
)

TOKEN_RE = re.compile(
    r"""
     (?P<space>[ \t\r\f]+)
    |(?P<comment>\#[^\n]*)
    |(?P<newline>\n)
    |(?P<lparen>\()
    |(?P<rparen>\))
    |(?P<colon>:)
    |(?P<string>"(?:[^"\\\n]|\\.)*")
    |(?P<number>[-+]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][-+]?\d+)?)
    |(?P<name>[A-Za-z][A-Za-z0-9_.]*)
    """,
    re.VERBOSE,
)

ROLE_MODIFIERS = frozenset({"inverse", "symmetric"})

_GROUP_KIND = {
    "lparen": LPAREN,
    "rparen": RPAREN,
    "colon": COLON,
    "string": STRING,
    "number": NUMBER,
    "name": NAME,
}


@dataclass(frozen=True)
class Token:
    kind: str
    value: str
    position: SourcePosition

    def describe(self):
        if self.kind in (NAME, NUMBER, STRING):
            return repr(self.value)
        return self.kind


def tokenize(text, source=None):
    """
    Divide el texto en tokens con línea y columna.

    Todo salto de línea termina la sentencia, también dentro de paréntesis.
    """
    tokens = []
    line, line_start = 1, 0
    index = 0
    while index < len(text):
        match = TOKEN_RE.match(text, index)
        column = index - line_start + 1
        position = SourcePosition(line, column, source)
        if match is None:
            raise ParseError(
                "Carácter inesperado %(char)r",
                code="lexical",
                position=position,
                params={"char": text[index]},
            )
        group = match.lastgroup
        value = match.group()
        if group == "newline":
            tokens.append(Token(NEWLINE, value, position))
            line += 1
            line_start = match.end()
        elif group in _GROUP_KIND:
            tokens.append(Token(_GROUP_KIND[group], value, position))
        index = match.end()
    tokens.append(Token(EOF, "", SourcePosition(line, index - line_start + 1, source)))
    return tokens


class TokenStream:
    def __init__(self, tokens):
        self.tokens = tokens
        self.index = 0

    def peek(self, offset=0):
        position = min(self.index + offset, len(self.tokens) - 1)
        return self.tokens[position]

    def next(self):
        token = self.peek()
        if token.kind != EOF:
            self.index += 1
        return token

    def at(self, kind, value=None):
        token = self.peek()
        return token.kind == kind and (value is None or token.value == value)

    def expect(self, kind, value=None, what=None):
        token = self.peek()
        if token.kind != kind or (value is not None and token.value != value):
            expected = what or (repr(value) if value is not None else kind)
            raise ParseError(
                "Se esperaba %(expected)s y se encontró %(found)s",
                code="syntax",
                position=token.position,
                params={"expected": expected, "found": token.describe()},
            )
        return self.next()


class ExpressionReader:
    """
    Lector de expresiones de clase y de rol.

    Registra cada nombre leído con su tipo esperado y su posición para
    validarlo después contra las declaraciones.
    """

    def __init__(self, stream):
        self.stream = stream
        self.references = []

    def reference(self, kind, token):
        self.references.append((kind, token.value, token.position))
        return token.value

    def name(self, kind, what=None):
        token = self.stream.expect(NAME, what=what or f"{kind} name")
        if token.value in RESERVED_NAMES:
            raise ParseError(
                "%(name)r es una palabra reservada",
                code="syntax",
                position=token.position,
                params={"name": token.value},
            )
        return self.reference(kind, token)

    def concept(self):
        token = self.stream.peek()
        if token.kind == NAME:
            self.stream.next()
            if token.value == TOP_KEYWORD:
                return TOP
            if token.value == BOTTOM_KEYWORD:
                return BOTTOM
            return Named(self.reference(KIND_CLASS, token))
        if token.kind != LPAREN:
            raise ParseError(
                "Se esperaba una expresión de clase y se encontró %(found)s",
                code="syntax",
                position=token.position,
                params={"found": token.describe()},
            )
        opening = self.stream.next()
        keyword = self.stream.expect(NAME, what="concept constructor").value
        if keyword == "not":
            result = Not(self.concept())
        elif keyword in ("and", "or"):
            operands = []
            while not self.stream.at(RPAREN):
                if self.stream.at(NEWLINE) or self.stream.at(EOF):
                    break
                operands.append(self.concept())
            if len(operands) < 2:
                raise ParseError(
                    "(%(op)s ...) necesita al menos dos operandos",
                    code="arity",
                    position=opening.position,
                    params={"op": keyword},
                )
            result = And(operands) if keyword == "and" else Or(operands)
        elif keyword in ("some", "all"):
            role = self.role()
            filler = self.concept()
            result = Some(role, filler) if keyword == "some" else All(role, filler)
        elif keyword == "one":
            result = Nominal(self.name(KIND_INDIVIDUAL))
        else:
            raise ParseError(
                "Constructor desconocido %(op)r",
                code="syntax",
                position=self.stream.tokens[self.stream.index - 1].position,
                params={"op": keyword},
            )
        self.stream.expect(RPAREN)
        return result

    def role(self):
        if self.stream.at(LPAREN):
            self.stream.next()
            self.stream.expect(NAME, "inv")
            name = self.name(KIND_ROLE)
            self.stream.expect(RPAREN)
            return InverseRole(name)
        return NamedRole(self.name(KIND_ROLE))

    def check_references(self, kind_of):
        for kind, name, position in self.references:
            declared = kind_of(name)
            if declared is None:
                raise ParseError(
                    "%(name)s no está declarado",
                    code="undeclared",
                    position=position,
                    params={"name": name},
                )
            if declared != kind:
                raise ParseError(
                    "%(name)s está declarado como %(declared)s, no como %(kind)s",
                    code="kind-clash",
                    position=position,
                    params={"name": name, "declared": declared, "kind": kind},
                )


class StatementReader(ExpressionReader):
    """Lee sentencias de axioma; cada handler recibe el token de la palabra clave."""

    AXIOM_KEYWORDS = (
        "subclass", "equiv", "disjoint", "subrole", "domain", "range",
        "instance", "rel", "data",
    )

    def __init__(self, stream):
        super().__init__(stream)
        self.axioms = []
        self.axiom_positions = []
        self.typed_literals = []

    def axiom_statement(self, keyword):
        if keyword.value not in self.AXIOM_KEYWORDS:
            raise ParseError(
                "Se esperaba un axioma y se encontró %(found)s",
                code="syntax",
                position=keyword.position,
                params={"found": keyword.describe()},
            )
        getattr(self, f"{keyword.value}_statement")(keyword)

    def add_axiom(self, axiom, keyword):
        self.axioms.append(axiom)
        self.axiom_positions.append(keyword.position)

    def subclass_statement(self, keyword):
        self.add_axiom(SubClassOf(self.concept(), self.concept()), keyword)

    def equiv_statement(self, keyword):
        self.add_axiom(EquivalentClasses(self.concept(), self.concept()), keyword)

    def disjoint_statement(self, keyword):
        names = [self.name(KIND_CLASS)]
        while self.stream.at(NAME):
            names.append(self.name(KIND_CLASS))
        if len(names) < 2:
            raise ParseError(
                "disjoint necesita al menos dos clases",
                code="arity",
                position=keyword.position,
            )
        self.add_axiom(DisjointClasses(tuple(names)), keyword)

    def subrole_statement(self, keyword):
        self.add_axiom(SubRoleOf(self.role(), self.role()), keyword)

    def domain_statement(self, keyword):
        self.add_axiom(RoleDomain(self.role(), self.concept()), keyword)

    def range_statement(self, keyword):
        self.add_axiom(RoleRange(self.role(), self.concept()), keyword)

    def instance_statement(self, keyword):
        individual = self.name(KIND_INDIVIDUAL)
        self.add_axiom(ClassAssertion(individual, self.concept()), keyword)

    def rel_statement(self, keyword):
        subject = self.name(KIND_INDIVIDUAL)
        role = self.role()
        obj = self.name(KIND_INDIVIDUAL)
        # (inv r)(a, b) se guarda como r(b, a)
        if isinstance(role, InverseRole):
            subject, obj = obj, subject
        self.add_axiom(RoleAssertion(subject, role.name, obj), keyword)

    def data_statement(self, keyword):
        individual = self.name(KIND_INDIVIDUAL)
        attribute = self.name(KIND_ATTRIBUTE)
        value, literal_token = read_literal(self.stream)
        unit = None
        if self.stream.at(NAME):
            unit_token = self.stream.next()
            if unit_token.value not in REGISTRY:
                raise ParseError(
                    "Unidad desconocida %(unit)r",
                    code="literal",
                    position=unit_token.position,
                    params={"unit": unit_token.value},
                )
            unit = unit_token.value
        if unit is not None and not isinstance(value, Decimal):
            raise ParseError(
                "Solo los literales decimales llevan unidad",
                code="literal",
                position=literal_token.position,
            )
        self.typed_literals.append((attribute, literal_token, value))
        self.add_axiom(DataAssertion(individual, attribute, value, unit), keyword)

    def check_literals(self, datatype_of):
        for attribute, literal_token, value in self.typed_literals:
            datatype = datatype_of(attribute)
            if datatype is None:
                continue
            if (datatype == DATATYPE_DECIMAL) != isinstance(value, Decimal):
                raise ParseError(
                    "El atributo %(attr)s es de tipo %(type)s",
                    code="literal",
                    position=literal_token.position,
                    params={"attr": attribute, "type": datatype},
                )


class ModuleParser(StatementReader):
    """Parser de un archivo `.dlo` completo."""

    def __init__(self, text, source=None):
        super().__init__(TokenStream(tokenize(text, source)))
        self.source = source
        self.module_name = None
        self.module_position = None
        self.imports = []
        self.import_positions = []
        self.declarations = []

    def parse(self) -> SourceModule:
        statements = {
            "ontology": self.ontology_statement,
            "import": self.import_statement,
            "class": self.class_statement,
            "role": self.role_statement,
            "attr": self.attr_statement,
            "individual": self.individual_statement,
        }
        while True:
            while self.stream.at(NEWLINE):
                self.stream.next()
            if self.stream.at(EOF):
                break
            keyword = self.stream.expect(NAME, what="statement")
            if keyword.value not in statements and keyword.value not in self.AXIOM_KEYWORDS:
                raise ParseError(
                    "Sentencia desconocida %(word)r",
                    code="syntax",
                    position=keyword.position,
                    params={"word": keyword.value},
                )
            if self.module_name is None and keyword.value != "ontology":
                raise ParseError(
                    "El módulo debe empezar con 'ontology NAME'",
                    code="syntax",
                    position=keyword.position,
                )
            statements.get(keyword.value, self.axiom_statement)(keyword)
            if not self.stream.at(EOF):
                self.stream.expect(NEWLINE)

        if self.module_name is None:
            raise ParseError(
                "Módulo vacío: falta 'ontology NAME'",
                code="syntax",
                position=self.stream.peek().position,
            )
        kinds = self.declared_kinds()
        self.check_references(kinds.get)
        datatypes = {
            d.name: d.datatype for d in self.declarations if d.kind == KIND_ATTRIBUTE
        }
        self.check_literals(datatypes.get)
        module = SourceModule(
            name=self.module_name,
            imports=tuple(self.imports),
            declarations=tuple(self.declarations),
            axioms=tuple(self.axioms),
            position=self.module_position,
            import_positions=tuple(self.import_positions),
            axiom_positions=tuple(self.axiom_positions),
        )
        logger.debug(
            "Módulo %s: %d declaraciones, %d axiomas",
            module.name, len(module.declarations), len(module.axioms),
        )
        return module

    def ontology_statement(self, keyword):
        if self.module_name is not None:
            raise ParseError(
                "'ontology' repetido", code="duplicate", position=keyword.position
            )
        self.module_name = self.stream.expect(NAME, what="module name").value
        self.module_position = keyword.position

    def import_statement(self, keyword):
        self.imports.append(self.stream.expect(NAME, what="module name").value)
        self.import_positions.append(keyword.position)

    def declared_name(self, kind):
        token = self.stream.expect(NAME, what=f"{kind} name")
        if token.value in RESERVED_NAMES:
            raise ParseError(
                "%(name)r es una palabra reservada",
                code="syntax",
                position=token.position,
                params={"name": token.value},
            )
        for previous in self.declarations:
            if previous.name == token.value and previous.kind == kind:
                raise ParseError(
                    "%(name)s ya fue declarado como %(kind)s",
                    code="duplicate",
                    position=token.position,
                    params={"name": token.value, "kind": kind},
                )
        return token

    def class_statement(self, keyword):
        token = self.declared_name(KIND_CLASS)
        self.declarations.append(Declaration(KIND_CLASS, token.value, position=token.position))

    def individual_statement(self, keyword):
        token = self.declared_name(KIND_INDIVIDUAL)
        self.declarations.append(
            Declaration(KIND_INDIVIDUAL, token.value, position=token.position)
        )

    def role_statement(self, keyword):
        token = self.declared_name(KIND_ROLE)
        if token.value in ROLE_MODIFIERS:
            raise ParseError(
                "%(name)r es un modificador de rol, no un nombre",
                code="syntax",
                position=token.position,
                params={"name": token.value},
            )
        inverse_name, symmetric = None, False
        if self.stream.at(NAME, "inverse"):
            self.stream.next()
            inverse_name = self.stream.expect(NAME, what="role name").value
        if self.stream.at(NAME, "symmetric"):
            self.stream.next()
            symmetric = True
        self.declarations.append(
            Declaration(
                KIND_ROLE, token.value, inverse=inverse_name, symmetric=symmetric,
                position=token.position,
            )
        )

    def attr_statement(self, keyword):
        token = self.declared_name(KIND_ATTRIBUTE)
        self.stream.expect(COLON)
        datatype = self.stream.expect(NAME, what="'decimal' or 'string'")
        if datatype.value not in (DATATYPE_DECIMAL, DATATYPE_STRING):
            raise ParseError(
                "Se esperaba 'decimal' o 'string' y se encontró %(found)s",
                code="syntax",
                position=datatype.position,
                params={"found": datatype.describe()},
            )
        self.declarations.append(
            Declaration(
                KIND_ATTRIBUTE, token.value, datatype=datatype.value,
                position=token.position,
            )
        )

    def declared_kinds(self):
        kinds = {}
        for declaration in self.declarations:
            names = [(declaration.name, declaration.kind)]
            if declaration.inverse:
                names.append((declaration.inverse, KIND_ROLE))
            for name, kind in names:
                if kinds.setdefault(name, kind) != kind:
                    raise ParseError(
                        "%(name)s declarado como %(first)s y como %(second)s",
                        code="kind-clash",
                        position=declaration.position,
                        params={"name": name, "first": kinds[name], "second": kind},
                    )
        return kinds


def read_literal(stream):
    token = stream.peek()
    if token.kind == NUMBER:
        stream.next()
        try:
            value = Decimal(token.value)
        except InvalidOperation:
            raise ParseError(
                "Número inválido %(value)r",
                code="lexical",
                position=token.position,
                params={"value": token.value},
            )
        return value, token
    if token.kind == STRING:
        stream.next()
        return unescape(token.value[1:-1]), token
    raise ParseError(
        "Se esperaba un literal y se encontró %(found)s",
        code="syntax",
        position=token.position,
        params={"found": token.describe()},
    )


def unescape(raw):
    return re.sub(r"\\(.)", r"\1", raw)


def escape(text):
    return text.replace("\\", "\\\\").replace('"', '\\"')


# ---- Entradas públicas ----
def parse_module(text, source=None) -> SourceModule:
    """Parsea un módulo `.dlo`; los errores llevan línea y columna"""
    return ModuleParser(text, source).parse()


def _kind_lookup(kinds):
    if isinstance(kinds, dict):
        return kinds.get
    return kinds.kind_of


def _read_single(text, kinds, read):
    stream = TokenStream(tokenize(text, None))
    reader = StatementReader(stream)
    while stream.at(NEWLINE):
        stream.next()
    result = read(reader)
    while stream.at(NEWLINE):
        stream.next()
    stream.expect(EOF)
    reader.check_references(_kind_lookup(kinds))
    return result


def parse_concept(text, kinds):
    """
    Parsea una expresión de clase suelta contra un vocabulario
    (KnowledgeBase, Signature o dict nombre -> tipo).
    """
    return _read_single(text, kinds, lambda reader: reader.concept())


def parse_role(text, kinds):
    return _read_single(text, kinds, lambda reader: reader.role())


def parse_axiom(text, kinds):
    """Parsea una sola sentencia de axioma (p. ej. una línea del inventario)"""

    def read(reader):
        reader.axiom_statement(reader.stream.expect(NAME, what="axiom"))
        return reader.axioms[0]

    return _read_single(text, kinds, read)
