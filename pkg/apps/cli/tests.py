import json
import logging
from contextlib import redirect_stderr
from io import StringIO

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from apps.assets.services import module_path
from apps.utils.constants import EXIT_USAGE

from .management.commands.defectont import Command


class CommandArgumentsTests(SimpleTestCase):
    def tearDown(self):
        logging.getLogger("apps").setLevel(logging.WARNING)

    def test_subcommand_is_required(self):
        with self.assertRaises(CommandError):
            call_command("defectont", stdout=StringIO(), stderr=StringIO())

    def test_verbosity_enables_debug_logging(self):
        out = StringIO()
        call_command(
            "defectont", "check", str(module_path("mason")), verbosity=2,
            stdout=out, stderr=StringIO(),
        )
        self.assertEqual(out.getvalue(), "consistent\n")
        self.assertEqual(logging.getLogger("apps").level, logging.DEBUG)

    def test_rule_out_list_ignores_blanks(self):
        out = StringIO()
        call_command(
            "defectont", "diagnose", str(module_path()), "d", "PorosityDefect",
            "--rule-out", " ,FeedstockMaterialInducedDefect, ", "--json",
            stdout=out, stderr=StringIO(),
        )
        candidates = json.loads(out.getvalue())["candidates"]
        self.assertEqual(len(candidates), 5)
        self.assertNotIn("FeedstockMaterialInducedDefect", candidates)

    def test_missing_table_is_a_usage_error(self):
        with self.assertRaises(CommandError) as raised:
            call_command(
                "defectont", "merge", str(module_path("mason")), "--rename", "/nonexistent.tsv",
                stdout=StringIO(), stderr=StringIO(),
            )
        self.assertEqual(raised.exception.returncode, 1)


class UsageExitCodeTests(SimpleTestCase):
    def parse_from_terminal(self, *argv):
        command = Command()
        command._called_from_command_line = True
        parser = command.create_parser("manage.py", "defectont")
        with redirect_stderr(StringIO()) as err, self.assertRaises(SystemExit) as raised:
            parser.parse_args(list(argv))
        return raised.exception.code, err.getvalue()

    def test_unknown_subcommand_exits_with_usage_code(self):
        code, message = self.parse_from_terminal("frobnicate")
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn("error:", message)

    def test_missing_argument_in_subcommand(self):
        code, _ = self.parse_from_terminal("check")
        self.assertEqual(code, EXIT_USAGE)

    def test_programmatic_call_raises_command_error(self):
        with self.assertRaises(CommandError) as raised:
            call_command("defectont", "ask", stdout=StringIO(), stderr=StringIO())
        self.assertEqual(raised.exception.returncode, EXIT_USAGE)
