import os
import sys

import pytest

sys.setrecursionlimit(100000)

EXTENDED = os.environ.get("QMARGINAL_EXTENDED") == "1"

extended_tier = pytest.mark.skipif(
    not EXTENDED, reason="extended tier; set QMARGINAL_EXTENDED=1 to run")
