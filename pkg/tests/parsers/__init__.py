# noqa: D104
# This file only exists to be able to import for the docs.
