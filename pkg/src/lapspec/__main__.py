"""Entry point for ``python -m lapspec``."""

import sys

from .cli import main

sys.exit(main())
