"""
Entry point for the iQuantum command line.
"""
import os
import sys

# Ensure the repository root is in sys.path
sys.path.append(os.path.dirname(__file__))

from app import cli

if __name__ == "__main__":
    sys.exit(cli.main())
