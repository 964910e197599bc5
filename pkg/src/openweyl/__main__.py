import sys

from openweyl.cli import main

sys.exit(main())
