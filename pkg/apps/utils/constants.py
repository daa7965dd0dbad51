# Constantes compartidas por todas las apps de la herramienta.

# ---- Códigos de salida del CLI ----
EXIT_OK = 0
EXIT_USAGE = 1  # uso incorrecto, errores de parseo o de enlace
EXIT_LOGICAL = 2  # base inconsistente o precondición lógica fallida

# ---- Archivos ----
MODULE_EXTENSION = ".dlo"
DEFAULT_ROOT_MODULE = "defectont"

# ---- Etiquetas de origen de axiomas ----
ORIGIN_BRIDGE = "bridge"
ORIGIN_SUPPLEMENT = "assets-supplement"
ORIGIN_DESIGN = "design"
ORIGIN_ELIMINATION = "elimination"
ORIGIN_QUERY = "query"

# ---- Tipos de atributos ----
DATATYPE_DECIMAL = "decimal"
DATATYPE_STRING = "string"
DATATYPE_CHOICES = [
    (DATATYPE_DECIMAL, "Decimal"),
    (DATATYPE_STRING, "String"),
]

# ---- Clases de nombres ----
KIND_CLASS = "class"
KIND_ROLE = "role"
KIND_ATTRIBUTE = "attr"
KIND_INDIVIDUAL = "individual"
KIND_CHOICES = [
    (KIND_CLASS, "Class"),
    (KIND_ROLE, "Role"),
    (KIND_ATTRIBUTE, "Attribute"),
    (KIND_INDIVIDUAL, "Individual"),
]
# Orden de serialización de declaraciones
KIND_ORDER = {KIND_CLASS: 0, KIND_ROLE: 1, KIND_ATTRIBUTE: 2, KIND_INDIVIDUAL: 3}

# ---- Gramática ----
TOP_KEYWORD = "top"
BOTTOM_KEYWORD = "bot"
CONCEPT_KEYWORDS = frozenset({"not", "and", "or", "some", "all", "one"})
RESERVED_NAMES = frozenset({TOP_KEYWORD, BOTTOM_KEYWORD})

# ---- Valores por defecto de settings.DEFECTONT ----
TOOLKIT_DEFAULTS = {
    "ASSETS_DIR": None,
    "GOLDEN_DIR": None,
    "INVENTORY_FILE": None,
    "ROOT_MODULE": DEFAULT_ROOT_MODULE,
    "MAX_GRAPH_NODES": 20000,
    "DECIMAL_PRECISION": 28,
    "ORACLE_MAX_DOMAIN": 2,
    "PROPERTY_RUNS": 1000,
    "LOG_LEVEL": "WARNING",
}
