"""
steerlhv test suite packages.

The test tree holds ``tests.unit``; acceptance-scale runs inside it carry the
``slow`` marker.
"""
