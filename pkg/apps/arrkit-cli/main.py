import sys

from arrkit_cli.commands import main

if __name__ == "__main__":
    sys.exit(main())
