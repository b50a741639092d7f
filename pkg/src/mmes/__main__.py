import sys

from mmes.cli import main

sys.exit(main())
