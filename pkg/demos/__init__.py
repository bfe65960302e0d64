# noqa: D104
# This file only exists to be able to do `demos.<thing>` in documentation.
