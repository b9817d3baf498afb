# cython: language_level=3
# Compiled build of the kernel machine; the source is shared with the
# pure-Python module so both backends run identical code.
include "_kernel.py"
