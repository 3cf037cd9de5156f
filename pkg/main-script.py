#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
isochron
Runs the bundled fixture checks and prints the report
"""

import sys

from src.main import main

if __name__ == "__main__":
    sys.exit(main(["--pretty", "reproduce"] + sys.argv[1:]))
