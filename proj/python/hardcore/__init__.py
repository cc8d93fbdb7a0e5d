"""Exact hard-core model counting and bound verification on triangle-free graphs.

Thin re-export of the compiled extension; see the README for the API tour.
The extension lives inside the package when pip-installed and next to it on
PYTHONPATH in a plain CMake build.
"""

try:
    from ._hardcore import *  # noqa: F401,F403
    from ._hardcore import __doc__  # noqa: F401
except ImportError:  # plain CMake build: extension sits on PYTHONPATH
    from _hardcore import *  # noqa: F401,F403
    from _hardcore import __doc__  # noqa: F401
