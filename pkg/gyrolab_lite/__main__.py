"""
gyrolab entry point for direct execution.
Usage: python3 -m gyrolab_lite verify table.json
"""

import sys
from .cli import main

if __name__ == "__main__":
    sys.exit(main())
