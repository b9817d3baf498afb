# cython: language_level=3
# Compiled build of the SLD machine, sharing its source with _vanilla.py.
include "_vanilla.py"
