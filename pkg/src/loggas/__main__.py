"""Run the CLI with ``python -m loggas``."""

import sys

from loggas.cli import main

sys.exit(main())
