import sys

from corrsynth.cli import main

sys.exit(main())
