import sys

from fjl.cli import main

sys.exit(main())
