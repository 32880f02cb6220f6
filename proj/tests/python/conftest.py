import os
import sys

# Under ctest, import the freshly built module from the build tree even if an
# editable install of the package is present.
_tree = os.environ.get("HQGAN_BUILD_TREE")
if _tree:
    sys.meta_path[:] = [
        f for f in sys.meta_path if not type(f).__module__.startswith("_editable_skbc_hqgan")
    ]
    for name in [m for m in sys.modules if m == "hqgan" or m.startswith("hqgan.")]:
        del sys.modules[name]
    sys.path.insert(0, _tree)
