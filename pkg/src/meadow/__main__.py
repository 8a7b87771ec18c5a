"""``python -m meadow``."""
import sys

from .cli import main

sys.exit(main())
