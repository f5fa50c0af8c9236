"""Test fixtures: make the built pywncs module importable.

The CMake test driver exports PYWNCS_MODULE_DIR pointing at the build
directory that holds the compiled module; installed-package runs need no
help and skip the path insertion.
"""

import os
import sys

_module_dir = os.environ.get("PYWNCS_MODULE_DIR")
if _module_dir and _module_dir not in sys.path:
    sys.path.insert(0, _module_dir)
