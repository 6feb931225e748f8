import sys

from toricrn.cli.commands import main

sys.exit(main())
