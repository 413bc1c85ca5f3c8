#!/usr/bin/env python3
import os
import sys

# Ensure local package resolution
PROJECT_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if PROJECT_ROOT not in sys.path:
    sys.path.append(PROJECT_ROOT)


if __name__ == "__main__":
    from omviz.cli import main

    main(sys.argv[1:])
