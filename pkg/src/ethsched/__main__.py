"""Allow ``python -m ethsched``."""

from .cli import main

main()
