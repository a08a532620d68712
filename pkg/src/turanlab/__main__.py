import sys

from turanlab.cli import main

sys.exit(main())
