import sys

from abhy.cli import main

sys.exit(main())
