"""
python manage.py defectont <subcomando> ...

Respuestas por stdout; diagnósticos por stderr (logger "apps").
Los DefectOntError salen como CommandError con el código de salida
de su categoría (1 uso/parseo, 2 lógico).
"""

import logging
import sys
from pathlib import Path

from django.core.management.base import BaseCommand, CommandError, CommandParser

from apps.diagnosis.services import FORMAT_JSON, FORMAT_TEXT, diagnose, render_report, trace
from apps.linker.loaders import (
    load_root,
    module_name_of,
    read_pairs,
    read_signature,
    read_triples,
)
from apps.linker.services import (
    bridge_equivalences,
    bridge_subclasses,
    normalize_names,
    prune_to_signature,
    reparent_classes,
)
from apps.ontology.interchange import export_interchange
from apps.ontology.models import module_from_kb
from apps.ontology.writer import serialize_module
from apps.queries.services import ask
from apps.reasoner.metrics import kb_metrics, render_metrics
from apps.reasoner.serializers import MetricsSerializer, TaxonomySerializer
from apps.reasoner.services import Reasoner
from apps.utils.constants import EXIT_LOGICAL, EXIT_USAGE
from apps.utils.exceptions import DefectOntError
from apps.utils.helpers import render_json

logger = logging.getLogger("apps")

CONSISTENT = "consistent"
INCONSISTENT = "inconsistent"


class UsageParser(CommandParser):
    """Los errores de argumentos salen con código 1, también desde la terminal"""

    def error(self, message):
        if self.called_from_command_line:
            self.print_usage(sys.stderr)
            self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")
        raise CommandError(f"Error: {message}", returncode=EXIT_USAGE)


class Command(BaseCommand):
    help = "Herramienta DefectOnt: consistencia, clasificación, consultas y diagnóstico"

    def add_arguments(self, parser):
        commands = parser.add_subparsers(
            dest="subcommand", required=True, parser_class=UsageParser
        )

        check = commands.add_parser("check", help="Consistencia de la KB")
        check.add_argument("root")

        classify = commands.add_parser("classify", help="Taxonomía de clases nombradas")
        classify.add_argument("root")
        output = classify.add_mutually_exclusive_group()
        output.add_argument("--dot", action="store_true", help="Formato graphviz")
        output.add_argument("--json", action="store_true", help="Resumen de la taxonomía")

        realize = commands.add_parser("realize", help="Clases más específicas de un individuo")
        realize.add_argument("root")
        realize.add_argument("individual")

        ask_cmd = commands.add_parser("ask", help="Pregunta de competencia")
        ask_cmd.add_argument("root")
        ask_cmd.add_argument("query")

        diagnose_cmd = commands.add_parser("diagnose", help="Diagnóstico por eliminación")
        diagnose_cmd.add_argument("root")
        diagnose_cmd.add_argument("individual")
        diagnose_cmd.add_argument("defect_class")
        diagnose_cmd.add_argument(
            "--rule-out", default="", help="Clases descartadas separadas por comas"
        )
        diagnose_cmd.add_argument("--json", action="store_true")
        diagnose_cmd.add_argument(
            "--trace", action="store_true", help="Un informe por cada descarte sucesivo"
        )

        merge = commands.add_parser("merge", help="Enlazar, transformar y serializar")
        merge.add_argument("root")
        merge.add_argument("--prune-to", help="Firma semilla, un nombre por línea")
        merge.add_argument("--rename", help="TSV nombre viejo / nombre nuevo")
        merge.add_argument("--bridge", help="TSV de pares equivalentes")
        merge.add_argument("--subclass", help="TSV subclase / superclase")
        merge.add_argument("--reparent", help="TSV clase / padre viejo / padre nuevo")
        merge.add_argument(
            "--interchange", action="store_true", help="Sintaxis funcional en vez de .dlo"
        )
        merge.add_argument("-o", "--output", help="Archivo de salida (stdout si se omite)")

        stats = commands.add_parser("stats", help="Métricas de la KB")
        stats.add_argument("root")
        stats.add_argument("--json", action="store_true")

    def create_parser(self, prog_name, subcommand, **kwargs):
        parser = super().create_parser(prog_name, subcommand, **kwargs)
        parser.__class__ = UsageParser
        return parser

    def handle(self, *args, **options):
        if options["verbosity"] >= 2:
            logger.setLevel(logging.DEBUG)
        handler = getattr(self, f"handle_{options['subcommand']}")
        try:
            handler(options)
        except DefectOntError as error:
            raise CommandError(str(error), returncode=error.exit_code)
        except OSError as error:
            raise CommandError(f"io error: {error}", returncode=EXIT_USAGE)

    def emit(self, text):
        # Las respuestas ya terminan en salto de línea
        self.stdout.write(text, ending="" if text.endswith("\n") else "\n")

    # ---- Subcomandos ----
    def handle_check(self, options):
        reasoner = Reasoner(load_root(options["root"]))
        if not reasoner.is_consistent():
            self.emit(INCONSISTENT)
            raise CommandError("knowledge base is inconsistent", returncode=EXIT_LOGICAL)
        self.emit(CONSISTENT)

    def handle_classify(self, options):
        taxonomy = Reasoner(load_root(options["root"])).classify()
        if options["dot"]:
            self.emit(taxonomy.render_dot())
        elif options["json"]:
            self.emit(render_json(TaxonomySerializer, taxonomy.summary()))
        else:
            self.emit(taxonomy.render_text())

    def handle_realize(self, options):
        classes = Reasoner(load_root(options["root"])).realize(options["individual"])
        self.emit("\n".join(classes))

    def handle_ask(self, options):
        self.emit(ask(load_root(options["root"]), options["query"]))

    def handle_diagnose(self, options):
        kb = load_root(options["root"])
        ruled_out = [name.strip() for name in options["rule_out"].split(",") if name.strip()]
        output_format = FORMAT_JSON if options["json"] else FORMAT_TEXT
        if options["trace"]:
            result = trace(kb, options["individual"], options["defect_class"], ruled_out)
        else:
            result = diagnose(kb, options["individual"], options["defect_class"], ruled_out)
        self.emit(render_report(result, output_format))

    def handle_merge(self, options):
        kb = load_root(options["root"])
        if options["prune_to"]:
            kb = prune_to_signature(kb, read_signature(options["prune_to"], kb))
        if options["rename"]:
            kb = normalize_names(kb, read_pairs(options["rename"]))
        if options["bridge"]:
            kb = bridge_equivalences(kb, read_pairs(options["bridge"]))
        if options["subclass"]:
            kb = bridge_subclasses(kb, read_pairs(options["subclass"]))
        if options["reparent"]:
            kb = reparent_classes(kb, read_triples(options["reparent"]))

        target = options["output"]
        name = module_name_of(target) if target else module_name_of(options["root"])
        if options["interchange"]:
            text = export_interchange(kb, name)
        else:
            text = serialize_module(module_from_kb(kb, name))
        if target:
            Path(target).write_text(text, encoding="utf-8")
            logger.info("Escrito %s (%d axiomas)", target, len(kb.axioms))
        else:
            self.emit(text)

    def handle_stats(self, options):
        metrics = kb_metrics(load_root(options["root"]))
        if options["json"]:
            self.emit(render_json(MetricsSerializer, metrics))
        else:
            self.emit(render_metrics(metrics))
