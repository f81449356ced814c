import sys

from veredit.cli import main

sys.exit(main())
