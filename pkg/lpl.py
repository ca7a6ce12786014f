#!/usr/bin/env python3
"""
Command-line entry point

Usage:
    python lpl.py eval --kind conv --alpha 0.5 --sigma 1 --grid log:0.01:10:50
    python lpl.py region --setting hermite_type --alpha -0.75 --sigma 0.2 --p 2 --q 10/3
    python lpl.py experiments --suite spectral --suite consistency --scale acceptance
"""

import sys

from src.cli import main

if __name__ == "__main__":
    sys.exit(main())
