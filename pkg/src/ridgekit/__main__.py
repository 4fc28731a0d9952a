import sys

from ridgekit.cli import main

sys.exit(main())
