import sys

from regevcost.cli import main

sys.exit(main())
