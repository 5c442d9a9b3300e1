import sys

from raagkit.cli import main

sys.exit(main())
