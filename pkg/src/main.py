"""
Main entry point for the stratkit command line.

Every subcommand writes one JSON report line per verdict to stdout; logs go to
stderr. The exit code is 0 when no record failed, 2 for usage errors, and
otherwise the code of the first failing record.
"""

import argparse
import logging
import sys
from typing import Any, Dict, List, Optional, Sequence

from pydantic import ValidationError

from src._version import get_version, get_version_info
from src.commands import (
    CAT_VERBS,
    COMMANDS,
    MODEL_VERBS,
    RANDOM_SOURCE,
    STANDALONE_VERBS,
    TRANSFORM_VERBS,
)
from src.config import VALID_DIALECTS, Settings, get_settings
from src.models import RunOptions, RunRecord
from src.utils.exceptions import ConfigurationError
from src.utils.logging import get_logger, log_with_context, setup_logging

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_MALFORMED = 3


def _common_flags() -> argparse.ArgumentParser:
    """Flags accepted both before and after the subcommand."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--dialect", choices=VALID_DIALECTS, default=argparse.SUPPRESS,
        help="Formula dialect (default: DEFAULT_DIALECT)",
    )
    common.add_argument(
        "--pretty", action="store_true", default=argparse.SUPPRESS,
        help="Indent report records",
    )
    common.add_argument(
        "--jobs", type=int, default=argparse.SUPPRESS,
        help="Worker processes for independent inputs (default: JOBS)",
    )
    common.add_argument(
        "--seed", type=int, default=argparse.SUPPRESS,
        help="Seed for random corpora (default: SEED)",
    )
    common.add_argument(
        "--multi", action="store_true", default=argparse.SUPPRESS,
        help="Formulas are ';'-terminated blocks instead of one per line",
    )
    common.add_argument(
        "--merge-set-vars", action="store_true", default=argparse.SUPPRESS,
        help="Give each L* set variable a single type",
    )
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = argparse.ArgumentParser(
        prog="stratkit",
        description=get_version_info()["project_description"],
        parents=[common],
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {get_version()}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", parents=[common], help="Parse and pretty-print formulas")
    p.add_argument("inputs", nargs="+", help="Formula files")

    s = sub.add_parser("stratify", parents=[common], help="Decide stratifiability")
    s.add_argument("inputs", nargs="*", help="Formula files")
    s.add_argument("--oracle", action="store_true", help="Cross-check with brute force")
    s.add_argument("--random", type=int, metavar="N", help="Check N random formulas")

    t = sub.add_parser("transform", parents=[common], help="Transform formulas")
    t.add_argument("verb", choices=TRANSFORM_VERBS)
    t.add_argument("inputs", nargs="*", help="Formula files")
    t.add_argument("--restrictor", help="Restricting term of relativize (default S)")
    t.add_argument("--constant", help="Constant of reflect, translate, supertransitivity")
    t.add_argument(
        "--param", dest="parameters", action="append", default=[],
        help="Designated schema variable; repeat for several",
    )
    t.add_argument("--closure", action="store_true", help="Universal closure of comprehend")
    t.add_argument("--k", type=int, default=1, help="Shift of raise")
    t.add_argument("--level-name", help="Variable replacing the constant in translate")

    m = sub.add_parser("model", parents=[common], help="Finite set structures")
    m.add_argument("verb", choices=MODEL_VERBS)
    m.add_argument("inputs", nargs="+", help="Ranks, structure files or formula files")
    m.add_argument("--structure", help="Structure of eval: a JSON file or V<n>")
    m.add_argument(
        "--assign", action="append", default=[], help="name=element for eval; repeatable"
    )
    m.add_argument("--rank", type=int, help="Ambient rank of reflect-search (default 4)")
    m.add_argument(
        "--require", dest="required", type=int, action="append", default=[],
        help="Code V_m must contain in reflect-search; repeatable",
    )
    m.add_argument(
        "--element", dest="elements", action="append", help="Element for cantor; repeatable"
    )

    c = sub.add_parser("cat", parents=[common], help="Finite categories")
    c.add_argument("verb", choices=CAT_VERBS)
    c.add_argument("inputs", nargs="+", help="JSON files, or a morphism count for enumerate")
    c.add_argument(
        "--max-morphisms", type=int, default=argparse.SUPPRESS,
        help="Morphism cap of freyd (default: FREYD_MAX_MORPHISMS)",
    )
    c.add_argument(
        "--max-apex", type=int, default=2,
        help="Largest cone apex for Rel/Set checks; negative for no limit",
    )
    c.add_argument("--max-objects", type=int, help="Object cap of enumerate")
    return parser


def _options(args: argparse.Namespace, settings: Settings) -> RunOptions:
    return RunOptions(
        dialect=getattr(args, "dialect", settings.DEFAULT_DIALECT),
        pretty=getattr(args, "pretty", False),
        jobs=getattr(args, "jobs", settings.JOBS),
        seed=getattr(args, "seed", settings.SEED),
        multi=getattr(args, "multi", False),
        max_morphisms=getattr(args, "max_morphisms", None),
        merge_set_vars=getattr(args, "merge_set_vars", settings.MERGE_SET_VARS),
    )


def _params(args: argparse.Namespace) -> Dict[str, Any]:
    """Subcommand-specific arguments, without the global flags."""
    skip = {"command", "inputs", "dialect", "pretty", "jobs", "seed", "multi"}
    skip |= {"max_morphisms", "merge_set_vars"}
    params = {key: value for key, value in vars(args).items() if key not in skip}
    if args.command == "transform" and "dialect" in args:
        params["payload_dialect"] = args.dialect
    return params


def _inputs(args: argparse.Namespace, parser: argparse.ArgumentParser) -> List[str]:
    inputs = list(args.inputs)
    if args.command == "stratify" and args.random:
        inputs = inputs or [RANDOM_SOURCE]
    elif args.command == "transform" and args.verb in STANDALONE_VERBS:
        inputs = inputs or [args.verb]
    if not inputs:
        parser.error(f"{args.command}: no inputs given")
    return inputs


def exit_code(records: Sequence[RunRecord]) -> int:
    """0 when every record passed, else the code of the first failing one."""
    for record in records:
        if not record.failed:
            continue
        if record.error is not None:
            return int(record.error.get("exit_code", EXIT_FAILED))
        return EXIT_FAILED
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        inputs = _inputs(args, parser)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK

    try:
        settings = get_settings()
        options = _options(args, settings)
    except ValidationError as exc:
        first = exc.errors()[0]
        error = ConfigurationError(
            f"invalid configuration: {first['msg']}",
            config_key=".".join(str(part) for part in first["loc"]) or None,
        )
        print(error.to_json(), file=sys.stderr)
        return EXIT_MALFORMED

    setup_logging(level=settings.LOG_LEVEL, use_json=settings.LOG_JSON)
    command = COMMANDS[args.command](options, _params(args))
    log_with_context(
        logger,
        logging.INFO,
        f"Running {command.subcommand}",
        inputs=len(inputs),
        jobs=options.jobs,
    )

    records = command.run(inputs)
    for record in records:
        sys.stdout.write(record.to_json_line(pretty=options.pretty) + "\n")
    sys.stdout.flush()

    code = exit_code(records)
    log_with_context(
        logger,
        logging.INFO,
        f"Finished {command.subcommand}",
        records=len(records),
        failed=sum(record.failed for record in records),
        exit_code=code,
    )
    return code


if __name__ == "__main__":
    raise SystemExit(main())
