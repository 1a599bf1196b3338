import sys

from ._bootstrap import main

sys.exit(main())
