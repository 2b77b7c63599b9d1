import sys

from dyntc.cli import main

sys.exit(main())
