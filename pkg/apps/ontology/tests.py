from decimal import Decimal

from django.test import SimpleTestCase

from apps.oracle.generators import make_rng, random_concept, random_module
from apps.utils.exceptions import ParseError, WellFormednessError
from apps.utils.helpers import property_runs

from .interchange import export_interchange
from .models import (
    BOTTOM,
    TOP,
    All,
    And,
    ClassAssertion,
    DataAssertion,
    DisjointClasses,
    EquivalentClasses,
    InverseRole,
    InverseRoles,
    KnowledgeBase,
    Named,
    NamedRole,
    Nominal,
    Not,
    Or,
    RoleAssertion,
    RoleDeclaration,
    RoleDomain,
    RoleRange,
    Signature,
    Some,
    SubClassOf,
    SymmetricRole,
    is_gci_form,
    is_nnf,
    kb_from_module,
    module_from_kb,
    nnf,
    signature_of,
    to_gcis,
)
from .parser import parse_axiom, parse_concept, parse_module
from .writer import serialize_module

A, B, C = Named("A"), Named("B"), Named("C")
R = NamedRole("R")

MINIMAL = "ontology m\nclass A\nsubclass A top\n"

DEFECT_MODULE = """\
ontology defects   # comentario
class Defect
class PhysicalObject
class PhysicalArtefact
class Material
role affects inverse isAffectedBy
subclass Defect (and PhysicalObject
                     (some affects (or PhysicalArtefact Material)))
"""


class ConceptTests(SimpleTestCase):
    def test_nnf_de_morgan(self):
        self.assertEqual(nnf(Not(And((A, B)))), Or((Not(A), Not(B))))

    def test_nnf_quantifier_duality(self):
        self.assertEqual(nnf(Not(Some(R, C))), All(R, Not(C)))

    def test_nnf_identity_on_named(self):
        self.assertEqual(nnf(A), A)

    def test_nnf_constants(self):
        self.assertEqual(nnf(Not(TOP)), BOTTOM)
        self.assertEqual(nnf(Not(Not(Nominal("i")))), Nominal("i"))

    def test_nnf_idempotent_on_random_trees(self):
        rng = make_rng(7)
        for _ in range(300):
            concept = random_concept(rng, ["A", "B", "C"], ["R", "S"], 6, individuals=["i"])
            normal = nnf(concept)
            self.assertTrue(is_nnf(normal))
            self.assertEqual(nnf(normal), normal)

    def test_and_needs_two_operands(self):
        with self.assertRaises(WellFormednessError) as caught:
            And((A,))
        self.assertEqual(caught.exception.code, "arity")

    def test_nary_equality_is_order_insensitive(self):
        self.assertEqual(And((A, B)), And((B, A)))
        self.assertEqual(hash(Or((A, B, A))), hash(Or((A, A, B))))
        self.assertNotEqual(And((A, B)), Or((A, B)))
        self.assertNotEqual(And((A, A, B)), And((A, B)))

    def test_source_order_kept_for_output(self):
        self.assertEqual(str(And((B, A))), "(and B A)")


class KnowledgeBaseTests(SimpleTestCase):
    def test_empty_signature(self):
        self.assertTrue(signature_of(KnowledgeBase()).is_empty())

    def test_single_class_signature(self):
        self.assertEqual(
            signature_of(KnowledgeBase(classes=["Defect"])), Signature(classes={"Defect"})
        )

    def test_kind_clash(self):
        with self.assertRaises(WellFormednessError) as caught:
            KnowledgeBase(classes=["x"], roles=["x"])
        self.assertEqual(caught.exception.code, "kind-clash")

    def test_undeclared_name_in_axiom(self):
        with self.assertRaises(WellFormednessError) as caught:
            KnowledgeBase(classes=["A"], axioms=[SubClassOf(A, B)])
        self.assertEqual(caught.exception.code, "undeclared")

    def test_reserved_name(self):
        with self.assertRaises(WellFormednessError):
            KnowledgeBase(classes=["top"])

    def test_unknown_unit_rejected(self):
        with self.assertRaises(WellFormednessError) as caught:
            KnowledgeBase(
                attributes=["len"], individuals=["d"],
                axioms=[DataAssertion("d", "len", Decimal("1"), "ft")],
            )
        self.assertEqual(caught.exception.code, "unknown-unit")

    def test_to_gcis_equivalence(self):
        kb = KnowledgeBase(classes=["A", "B"], axioms=[EquivalentClasses(A, B)])
        self.assertEqual(list(to_gcis(kb).axioms), [SubClassOf(A, B), SubClassOf(B, A)])

    def test_to_gcis_disjointness_is_pairwise(self):
        kb = KnowledgeBase(classes=["A", "B", "C"], axioms=[DisjointClasses(("A", "B", "C"))])
        gcis = to_gcis(kb).axioms
        self.assertEqual(len(gcis), 3)
        self.assertIn(SubClassOf(And((A, C)), BOTTOM), gcis)

    def test_to_gcis_domain_range_symmetry(self):
        kb = KnowledgeBase(
            classes=["Defect", "A"],
            roles=[RoleDeclaration("affects"), RoleDeclaration("R", symmetric=True)],
            axioms=[
                RoleDomain(NamedRole("affects"), Named("Defect")),
                RoleRange(R, A),
                SymmetricRole("R"),
            ],
        )
        gcis = to_gcis(kb)
        self.assertIn(SubClassOf(Some(NamedRole("affects"), TOP), Named("Defect")), gcis.axioms)
        self.assertIn(SubClassOf(TOP, All(R, A)), gcis.axioms)
        self.assertIn(InverseRoles("R", "R"), gcis.axioms)
        self.assertTrue(is_gci_form(gcis))
        self.assertFalse(any(role.symmetric for role in gcis.roles))

    def test_extend_tags_origin(self):
        kb = KnowledgeBase(classes=["A", "B"]).extend([SubClassOf(A, B)], "bridge")
        self.assertEqual(kb.axioms_from("bridge"), [SubClassOf(A, B)])


class ParserTests(SimpleTestCase):
    def test_minimal_module(self):
        module = parse_module(MINIMAL)
        self.assertEqual(module.name, "m")
        self.assertEqual(len(module.declarations), 1)
        self.assertEqual(module.axioms, (SubClassOf(A, TOP),))
        self.assertEqual(module.axiom_positions[0].line, 3)

    def test_defect_constraint_tree(self):
        module = parse_module(DEFECT_MODULE)
        expected = SubClassOf(
            Named("Defect"),
            And((
                Named("PhysicalObject"),
                Some(NamedRole("affects"), Or((Named("PhysicalArtefact"), Named("Material")))),
            )),
        )
        self.assertEqual(module.axioms, (expected,))
        self.assertEqual(module.declared()["isAffectedBy"], "role")

    def test_arity_error_position(self):
        with self.assertRaises(ParseError) as caught:
            parse_module("ontology m\nclass A\nclass B\nsubclass A (and B)\n", "m.dlo")
        error = caught.exception
        self.assertEqual(error.code, "arity")
        self.assertEqual(error.position.line, 4)
        self.assertTrue(str(error).startswith("parse error [arity] at m.dlo:4:"))

    def test_lexical_error(self):
        with self.assertRaises(ParseError) as caught:
            parse_module("ontology m\nclass A$\n")
        self.assertEqual(caught.exception.code, "lexical")
        self.assertEqual((caught.exception.position.line, caught.exception.position.column), (2, 8))

    def test_undeclared_name(self):
        with self.assertRaises(ParseError) as caught:
            parse_module("ontology m\nclass A\nsubclass A Defectt\n")
        self.assertEqual(caught.exception.code, "undeclared")
        self.assertEqual(caught.exception.position.line, 3)

    def test_kind_clash(self):
        with self.assertRaises(ParseError) as caught:
            parse_module("ontology m\nclass A\nrole r\nsubclass A (some A r)\n")
        self.assertEqual(caught.exception.code, "kind-clash")

    def test_duplicate_declaration(self):
        with self.assertRaises(ParseError) as caught:
            parse_module("ontology m\nclass A\nclass A\n")
        self.assertEqual(caught.exception.code, "duplicate")

    def test_first_statement_is_ontology(self):
        with self.assertRaises(ParseError):
            parse_module("class A\n")

    def test_data_statement(self):
        module = parse_module(
            "ontology m\nattr hasLength : decimal\nattr note : string\nindividual d\n"
            'data d hasLength 1500 mm\ndata d note "a \\"b\\""\n'
        )
        self.assertEqual(
            module.axioms,
            (
                DataAssertion("d", "hasLength", Decimal("1500"), "mm"),
                DataAssertion("d", "note", 'a "b"'),
            ),
        )

    def test_data_literal_type_checked(self):
        with self.assertRaises(ParseError) as caught:
            parse_module(
                'ontology m\nattr hasLength : decimal\nindividual d\ndata d hasLength "x"\n'
            )
        self.assertEqual(caught.exception.code, "literal")

    def test_inverse_role_expression(self):
        kinds = {"A": "class", "hosts": "role"}
        self.assertEqual(
            parse_concept("(all (inv hosts) A)", kinds), All(InverseRole("hosts"), A)
        )

    def test_parse_axiom(self):
        kinds = {"A": "class", "B": "class"}
        self.assertEqual(parse_axiom("subclass A (not B)", kinds), SubClassOf(A, Not(B)))

    def test_unclosed_paren_reported_on_its_line(self):
        text = "ontology m\nclass A\nclass B\nrole r\nsubclass A (some r B\nsubclass B A\n"
        with self.assertRaises(ParseError) as caught:
            parse_module(text)
        self.assertEqual(caught.exception.position.line, 5)
        self.assertIn("end of line", str(caught.exception))

    def test_unclosed_last_statement(self):
        with self.assertRaises(ParseError) as caught:
            parse_module("ontology m\nclass A\nclass B\nsubclass A (and A B")
        self.assertEqual(caught.exception.position.line, 4)

    def test_rel_with_inverse_role(self):
        module = parse_module(
            "ontology m\nrole r\nindividual a\nindividual b\nrel a (inv r) b\n"
        )
        self.assertEqual(module.axioms, (RoleAssertion("b", "r", "a"),))
        self.assertTrue(parse_module(serialize_module(module)).same_structure(module))

    def test_role_modifier_is_not_a_name(self):
        with self.assertRaises(ParseError) as caught:
            parse_module("ontology m\nrole symmetric\n")
        self.assertEqual(caught.exception.position.line, 2)


class WriterTests(SimpleTestCase):
    def test_minimal_round_trip(self):
        module = parse_module(MINIMAL)
        self.assertTrue(parse_module(serialize_module(module)).same_structure(module))

    def test_comments_dropped(self):
        module = parse_module("ontology m  # ünïcode ✓\nclass A\n")
        text = serialize_module(module)
        self.assertNotIn("#", text)
        self.assertTrue(parse_module(text).same_structure(module))

    def test_declarations_sorted_by_kind_then_name(self):
        module = parse_module("ontology m\nindividual z\nrole r\nclass B\nclass A\n")
        self.assertEqual(
            serialize_module(module), "ontology m\n\nclass A\nclass B\nrole r\nindividual z\n"
        )

    def test_round_trip_generated_modules(self):
        rng = make_rng(2024)
        for index in range(property_runs(500)):
            module = random_module(rng, name=f"g{index}")
            with self.subTest(index=index):
                text = serialize_module(module)
                self.assertTrue(parse_module(text).same_structure(module), text)

    def test_module_from_kb_folds_role_flags(self):
        kb = KnowledgeBase(
            roles=[RoleDeclaration("p"), RoleDeclaration("q"), RoleDeclaration("o")],
            axioms=[InverseRoles("p", "q"), SymmetricRole("o")],
        )
        module = module_from_kb(kb, "folded")
        self.assertEqual(module.axioms, ())
        text = serialize_module(module)
        self.assertIn("role p inverse q", text)
        self.assertIn("role o symmetric", text)
        self.assertEqual(
            set(kb_from_module(parse_module(text)).rbox_axioms()), set(kb.rbox_axioms())
        )


class InterchangeTests(SimpleTestCase):
    def test_some_values_from(self):
        kb = KnowledgeBase(classes=["A", "B"], roles=["R"], axioms=[SubClassOf(A, Some(R, B))])
        self.assertIn("SubClassOf(:A ObjectSomeValuesFrom(:R :B))", export_interchange(kb))

    def test_nominal_and_inverse(self):
        kb = KnowledgeBase(
            classes=["Material"],
            roles=[
                RoleDeclaration("hasMaterialState", "isMaterialStateOf"),
                RoleDeclaration("isMaterialStateOf"),
            ],
            individuals=["solidState"],
            axioms=[
                SubClassOf(
                    Named("Material"), Some(NamedRole("hasMaterialState"), Nominal("solidState"))
                )
            ],
        )
        text = export_interchange(kb, "mam")
        self.assertIn("ObjectOneOf(:solidState)", text)
        self.assertIn("InverseObjectProperties(:hasMaterialState :isMaterialStateOf)", text)
        self.assertTrue(text.startswith("Prefix(:=<urn:defectont:mam#>)"))
        self.assertTrue(text.rstrip().endswith(")"))

    def test_units_as_annotation(self):
        kb = KnowledgeBase(
            attributes=["hasLength"], individuals=["d"],
            axioms=[DataAssertion("d", "hasLength", Decimal("1500"), "mm")],
        )
        text = export_interchange(kb)
        self.assertIn(
            'DataPropertyAssertion(Annotation(:unitCode "mm") :hasLength :d "1500"^^xsd:decimal)',
            text,
        )
        self.assertIn("Declaration(AnnotationProperty(:unitCode))", text)

    def test_one_axiom_per_line(self):
        kb = KnowledgeBase(classes=["A", "B"], individuals=["x"],
                           axioms=[EquivalentClasses(A, B), ClassAssertion("x", Not(A))])
        lines = export_interchange(kb).splitlines()
        self.assertIn("EquivalentClasses(:A :B)", lines)
        self.assertIn("ClassAssertion(ObjectComplementOf(:A) :x)", lines)
