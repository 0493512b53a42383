"""
.. include:: ../../docs/cli/README.md
"""
