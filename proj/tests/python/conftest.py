import os
import sys

# The build tree exports the extension module location; the source tree holds
# the pure-python package. Wire both up so `import pwsparse` works without an
# install step.
ext_dir = os.environ.get("PWSPARSE_EXT_DIR")
src = os.environ.get("PWSPARSE_SRC")
if ext_dir:
    sys.path.insert(0, ext_dir)
if src:
    sys.path.insert(0, os.path.join(src, "python"))
