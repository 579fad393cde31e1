"""
Console entry point for the ``qws`` command.
"""

import sys

from src.cli import run


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
