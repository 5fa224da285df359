import sys

from causal_games.cli import main

sys.exit(main())
