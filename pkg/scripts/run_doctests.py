#!/usr/bin/env python3

from __future__ import annotations

import argparse
import doctest
import importlib
import json
import logging
import pkgutil
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from collections.abc import Iterator
    from types import ModuleType
    from typing import (
        Any,
        Literal,
    )


PROJECT_DIR: Path = Path(__file__).resolve().parent.parent
PACKAGE: str = "evtag"
OPTION_FLAGS: int = doctest.ELLIPSIS | doctest.NORMALIZE_WHITESPACE | doctest.DONT_ACCEPT_TRUE_FOR_1

logger: logging.Logger = logging.getLogger(__name__)


@dataclass
class Args:
    prefix: str | None
    raise_on_error: bool
    output_format: Literal["text", "json"]
    verbosity: int


def parse_args() -> Args:
    parser = argparse.ArgumentParser(formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    parser.add_argument(
        "--prefix",
        type=str,
        default=None,
        help="Only run modules whose dotted name starts with this prefix (e.g. evtag.network).",
    )
    parser.add_argument(
        "--raise-on-error",
        action="store_true",
        help="Raise an exception on the first error encountered.",
    )
    parser.add_argument(
        "--output-format",
        type=str,
        choices=["text", "json"],
        default="text",
        help="Format of the output report.",
    )
    parser.add_argument(
        "-v",
        "--verbose",
        action="count",
        dest="verbosity",
        default=0,
        help="Increase verbosity level (0-2).",
    )
    args = parser.parse_args()
    return Args(**vars(args))


def iter_modules(prefix: str | None) -> Iterator[ModuleType]:
    """Import every module of the package, in name order."""
    package = importlib.import_module(PACKAGE)
    names = [PACKAGE] + sorted(
        info.name for info in pkgutil.walk_packages(package.__path__, prefix=f"{PACKAGE}.")
    )
    for name in names:
        if prefix and not name.startswith(prefix):
            continue
        if name.endswith(("._version", ".__main__")):
            continue
        yield importlib.import_module(name)


def validate_all(
    prefix: str | None,
    raise_on_error: bool,
    verbose: bool,
) -> dict[str, dict[str, Any]]:
    """Execute every docstring example of the package.

    Args:
        prefix (str | None): Prefix of module names to validate. If None, validate all modules.
        raise_on_error (bool): Whether to raise an exception on the first error encountered.
        verbose (bool): Whether to enable verbose doctest output.

    Returns:
        dict[str, dict[str, Any]]: Source file, failures and examples run, per module.
    """
    result: dict[str, dict[str, Any]] = {}
    for module in iter_modules(prefix):
        logger.debug("Testing docstrings of %r", module.__name__)
        n_failures, n_tries = doctest.testmod(
            m=module,
            verbose=verbose,
            name=module.__name__,
            optionflags=OPTION_FLAGS,
            raise_on_error=raise_on_error,
        )
        if n_tries == 0:
            continue
        result[module.__name__] = {
            "file": str(Path(module.__file__ or "").resolve().relative_to(PROJECT_DIR)),
            "n_failures": n_failures,
            "n_tries": n_tries,
        }
    return result


def report_failure(e: doctest.UnexpectedException | doctest.DocTestFailure) -> None:
    file_path = Path(e.test.filename or "").resolve()
    line_no = e.test.lineno + e.example.lineno + 1
    logger.error("DocTest failed for %s at %s:%d", e.test.name, file_path, line_no, exc_info=e)
    print(f"Doctest Failure at {file_path.relative_to(PROJECT_DIR)}:{line_no}")
    print(f"Name: {e.test.name}")
    if isinstance(e, doctest.DocTestFailure):
        print("Expected: " + e.example.want.removesuffix("\n"))
        print("Actual: " + e.got.removesuffix("\n"))


def main():
    args = parse_args()

    log_level: int
    if args.verbosity == 0:
        log_level = logging.ERROR
    elif args.verbosity == 1:
        log_level = logging.INFO
    elif args.verbosity == 2:
        log_level = logging.DEBUG
    else:
        raise ValueError(f"Invalid verbosity level: {args.verbosity}")
    logging.basicConfig(
        level=log_level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    )

    try:
        result = validate_all(
            prefix=args.prefix,
            raise_on_error=args.raise_on_error,
            verbose=log_level <= logging.DEBUG,
        )
    except (doctest.UnexpectedException, doctest.DocTestFailure) as e:
        report_failure(e)
        sys.exit(1)

    if args.output_format == "json":
        print(json.dumps(result) + "\n", end="")
    else:
        for i, (module_name, res) in enumerate(result.items()):
            if i > 0:
                print()
            print(f"Module: {module_name}")
            print(f"  File: {res['file']}")
            print(f"  Doctests run: {res['n_tries']}")
            print(f"  Doctests failed: {res['n_failures']}")
    sys.exit(1 if any(res["n_failures"] for res in result.values()) else 0)


if __name__ == "__main__":
    main()
