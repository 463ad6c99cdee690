"""Module entry point so `python -m pisot_spectra` behaves like `pisot`."""

import sys

from .cli import main

if __name__ == "__main__":
    sys.exit(main())
