from decimal import Decimal

from django.test import SimpleTestCase

from apps.assets.services import load_knowledge_base, read_questions
from apps.measures.models import Quantity
from apps.ontology.models import (
    And,
    InverseRole,
    Named,
    NamedRole,
    Nominal,
    RoleAssertion,
    Some,
    kb_from_module,
)
from apps.ontology.parser import parse_module
from apps.reasoner.services import Reasoner
from apps.utils.exceptions import ParseError, QueryError, ReasonerError, UnitError

from .models import FillersQuery, InstanceQuery, InstancesQuery, ValueQuery
from .parser import parse_query
from .services import (
    answer,
    ask,
    ask_instance,
    attribute_value,
    certain_fillers,
    format_answer,
    retrieve_instances,
)

PLANT = """\
ontology plant
class Platform
class Sensor
class Defect
class PorosityDefect
role hosts inverse isHostedBy
role observes
attr hasLength : decimal
attr hasArea : decimal
attr label : string
individual pl
individual s1
individual s2
individual d
subclass PorosityDefect Defect
instance pl Platform
rel pl hosts s1
rel s1 observes d
instance d PorosityDefect
data d hasLength 1500 mm
data d hasArea 2 mm2
data d hasArea 3 mm2
data d label "poro"
"""


def kb_of(text):
    return kb_from_module(parse_module(text))


class ParseQueryTests(SimpleTestCase):
    def setUp(self):
        self.kb = kb_of(PLANT)

    def test_four_forms(self):
        self.assertEqual(
            parse_query("instance? d Defect", self.kb), InstanceQuery("d", Named("Defect"))
        )
        self.assertEqual(
            parse_query("instances? (some hosts Sensor)", self.kb),
            InstancesQuery(Some(NamedRole("hosts"), Named("Sensor"))),
        )
        self.assertEqual(
            parse_query("fillers? s1 (inv hosts)", self.kb),
            FillersQuery("s1", InverseRole("hosts")),
        )
        self.assertEqual(
            parse_query("value? d hasLength m", self.kb), ValueQuery("d", "hasLength", "m")
        )

    def test_whitespace_and_trailing_newline(self):
        self.assertEqual(
            parse_query("  instance?   d\tDefect\n", self.kb), InstanceQuery("d", Named("Defect"))
        )

    def test_nominal_filler(self):
        query = parse_query("instances? (some observes (one d))", self.kb)
        self.assertEqual(query.concept, Some(NamedRole("observes"), Nominal("d")))

    def test_unknown_head(self):
        with self.assertRaises(ParseError) as raised:
            parse_query("describe? d", self.kb)
        self.assertEqual(raised.exception.code, "syntax")
        self.assertEqual(raised.exception.position.column, 1)

    def test_undeclared_name(self):
        with self.assertRaises(ParseError) as raised:
            parse_query("instance? d Crack", self.kb)
        self.assertEqual(raised.exception.code, "undeclared")

    def test_kind_clash(self):
        with self.assertRaises(ParseError) as raised:
            parse_query("fillers? Defect hosts", self.kb)
        self.assertEqual(raised.exception.code, "kind-clash")

    def test_trailing_tokens(self):
        with self.assertRaises(ParseError):
            parse_query("instances? Defect Sensor", self.kb)

    def test_unknown_unit(self):
        with self.assertRaises(ParseError) as raised:
            parse_query("value? d hasLength inch", self.kb)
        self.assertEqual(raised.exception.code, "literal")


class AnswerTests(SimpleTestCase):
    def setUp(self):
        self.kb = kb_of(PLANT)
        self.reasoner = Reasoner(self.kb)

    def test_instance(self):
        self.assertEqual(ask(self.kb, "instance? d Defect", self.reasoner), "true")
        self.assertEqual(ask(self.kb, "instance? d Sensor", self.reasoner), "false")

    def test_composed_instance(self):
        text = "instance? pl (some hosts (some observes PorosityDefect))"
        self.assertEqual(ask(self.kb, text, self.reasoner), "true")

    def test_fillers_and_inverse(self):
        self.assertEqual(ask(self.kb, "fillers? pl hosts", self.reasoner), "s1")
        self.assertEqual(ask(self.kb, "fillers? s1 (inv hosts)", self.reasoner), "pl")
        self.assertEqual(ask(self.kb, "fillers? s1 isHostedBy", self.reasoner), "pl")
        self.assertEqual(ask(self.kb, "fillers? s2 hosts", self.reasoner), "")

    def test_instances(self):
        self.assertEqual(ask(self.kb, "instances? Defect", self.reasoner), "d")
        self.assertEqual(
            ask(self.kb, "instances? (some observes Defect)", self.reasoner), "s1"
        )

    def test_value_conversion(self):
        self.assertEqual(ask(self.kb, "value? d hasLength m", self.reasoner), "1.5 m")
        self.assertEqual(ask(self.kb, "value? d hasLength mm", self.reasoner), "1500 mm")
        result = attribute_value(self.kb, ValueQuery("d", "hasLength", "um"))
        self.assertEqual(result, Quantity(Decimal("1500000"), "um"))

    def test_no_value(self):
        for text in ("value? s1 hasLength m", "value? d label m"):
            with self.subTest(query=text):
                with self.assertRaises(QueryError) as raised:
                    ask(self.kb, text, self.reasoner)
                self.assertEqual(raised.exception.code, "no-value")

    def test_ambiguous_value(self):
        with self.assertRaises(QueryError) as raised:
            ask(self.kb, "value? d hasArea mm2", self.reasoner)
        self.assertEqual(raised.exception.code, "ambiguous-value")
        self.assertIn("2 mm2", raised.exception.text)

    def test_dimension_mismatch(self):
        with self.assertRaises(UnitError):
            ask(self.kb, "value? d hasLength K", self.reasoner)

    def test_inconsistent_kb(self):
        kb = kb_of(PLANT + "disjoint PorosityDefect Sensor\ninstance d Sensor\n")
        with self.assertRaises(ReasonerError) as raised:
            answer(kb, InstanceQuery("d", Named("Defect")))
        self.assertEqual(raised.exception.code, "inconsistent")

    def test_fillers_are_monotone(self):
        query = FillersQuery("pl", NamedRole("hosts"))
        before = certain_fillers(self.kb, query)
        grown = self.kb.extend([RoleAssertion("pl", "hosts", "s2")], "query")
        after = certain_fillers(grown, query)
        self.assertTrue(set(before) <= set(after))
        self.assertEqual(after, ["s1", "s2"])


class FormatAnswerTests(SimpleTestCase):
    def test_booleans(self):
        self.assertEqual(format_answer(True), "true")
        self.assertEqual(format_answer(False), "false")

    def test_names_sorted_one_per_line(self):
        self.assertEqual(format_answer(["s2", "s1"]), "s1\ns2")
        self.assertEqual(format_answer([]), "")

    def test_quantity_without_exponent(self):
        self.assertEqual(format_answer(Quantity(Decimal("1.5E+3"), "mm")), "1500 mm")
        self.assertEqual(format_answer(Quantity(Decimal("0.0500"), "mm")), "0.05 mm")


class CompetencyQuestionTests(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.kb = load_knowledge_base()
        cls.reasoner = Reasoner(cls.kb)

    def test_golden_answers(self):
        questions = read_questions()
        self.assertGreaterEqual(len(questions), 9)
        for ident, text, expected in questions:
            with self.subTest(question=ident):
                self.assertEqual(ask(self.kb, text, self.reasoner), expected)

    def test_answers_agree_with_realization(self):
        for individual in ("d", "ball1", "crack"):
            with self.subTest(individual=individual):
                entailed = {
                    name for name in self.kb.classes
                    if self.reasoner.entails_instance(individual, Named(name))
                }
                realized = self.reasoner.realize(individual)
                self.assertTrue(set(realized) <= entailed)
                for name in entailed:
                    self.assertTrue(
                        any(
                            self.reasoner.entails_subsumption(Named(low), Named(name))
                            for low in realized
                        ),
                        name,
                    )

    def test_instances_match_instance_checks(self):
        concept = And((Named("BallingDefect"), Named("SurfaceDefect")))
        found = retrieve_instances(self.kb, InstancesQuery(concept), self.reasoner)
        expected = [
            name for name in sorted(self.kb.individuals)
            if self.reasoner.entails_instance(name, concept)
        ]
        self.assertEqual(found, expected)
        self.assertEqual(found, ["ball1"])

    def test_no_anonymous_fillers(self):
        # d debe afectar a algo, pero solo pr es un relleno cierto
        self.assertEqual(ask(self.kb, "fillers? d affects", self.reasoner), "pr")
        self.assertEqual(
            ask(self.kb, "fillers? l (inv hasPart)", self.reasoner), "pr"
        )

    def test_sensors_observing_porosity(self):
        # Sensores de pl que observan algún defecto de porosidad, paso a paso
        hosted = certain_fillers(self.kb, FillersQuery("pl", NamedRole("hosts")), self.reasoner)
        self.assertEqual(hosted, ["s1", "s2"])
        watching = [
            sensor for sensor in hosted
            if any(
                ask_instance(self.kb, InstanceQuery(seen, Named("PorosityDefect")), self.reasoner)
                for seen in certain_fillers(
                    self.kb, FillersQuery(sensor, NamedRole("observes")), self.reasoner
                )
            )
        ]
        self.assertEqual(watching, ["s1"])
        self.assertEqual(
            ask(self.kb, "instance? pl (some hosts (some observes PorosityDefect))", self.reasoner),
            "true",
        )
