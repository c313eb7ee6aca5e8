#!/usr/bin/env python3
"""
gyrolab-lite - finite and model gyrogroup verification engine

Usage:
    ./gyrolab-lite.py verify catalog/g8.json          # Axioms + identity suite
    ./gyrolab-lite.py classify catalog/g8.json --all  # Subgyrogroup hierarchy
    ./gyrolab-lite.py models --model mobius           # Sampled model identities
    ./gyrolab-lite.py search --max-order 6            # L but not strongly-L search
    ./gyrolab-lite.py search --debug                  # Enable debug logging
"""

import sys
from pathlib import Path

# Try to use venv first, fall back to system Python
script_dir = Path(__file__).parent.resolve()
venv_site_packages = script_dir / ".venv" / "lib"

if venv_site_packages.exists():
    site_packages = list(venv_site_packages.glob("python*/site-packages"))
    if site_packages:
        sys.path.insert(0, str(site_packages[0]))

sys.path.insert(0, str(script_dir))

try:
    from gyrolab_lite.cli import main
except ImportError as e:
    print(f"ERROR: Failed to import gyrolab_lite: {e}")
    print("Install the requirements with: pip install -r requirements.txt")
    sys.exit(2)

if __name__ == "__main__":
    sys.exit(main())
