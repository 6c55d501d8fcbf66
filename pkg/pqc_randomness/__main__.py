import sys

from pqc_randomness.cli import main

sys.exit(main())
