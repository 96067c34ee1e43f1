#!/usr/bin/env python3
"""
Run the gce command-line tool from a source checkout.

Usage:
    python3 run_gce.py k0 --inline "1111/1011/1101/1110"
    python3 run_gce.py class --perms matrices/c4.01m

Settings are read from the environment or a .env file (see docs/guides/CLI_USAGE.md).
"""
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(os.path.abspath(__file__)), 'gce'))

from gce_cli import main  # noqa: E402


if __name__ == '__main__':
    sys.exit(main())
