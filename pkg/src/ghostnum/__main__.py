import sys

from ghostnum.cli import main

sys.exit(main())
