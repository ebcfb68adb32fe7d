"""Entry point for ``python -m evtag``."""

import sys

from evtag.cli import main

sys.exit(main())
