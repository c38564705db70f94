import importlib.util
import os
import sys
from pathlib import Path

# ctest points this at the build tree so the freshly built module is tested
# even when an installed copy of the package exists.
_build = os.environ.get("FVBENCH_BUILD_PYTHON")
if _build:
    # an editable install registers a finder ahead of sys.path; drop it
    sys.meta_path[:] = [f for f in sys.meta_path if "editable" not in type(f).__module__]
    _init = Path(_build) / "fvbench" / "__init__.py"
    _spec = importlib.util.spec_from_file_location("fvbench", _init, submodule_search_locations=[str(_init.parent)])
    _mod = importlib.util.module_from_spec(_spec)
    sys.modules["fvbench"] = _mod
    _spec.loader.exec_module(_mod)
