from nottingham_torsion.characters import parse_character_literal
from .cli_schema import Subcommand, OutputFormat, ExitStatus, CommandRequest
from .verification import CheckResult, CheckStatus, run_acceptance_suite
from .report_emitters import emit
from .cli import run, main
