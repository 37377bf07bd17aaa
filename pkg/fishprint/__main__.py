"""
python -m fishprint
"""

import sys

from .cli import main

__author__ = 'Stephen Brown (Little Fish Solutions LTD)'

sys.exit(main())
