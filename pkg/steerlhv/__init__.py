"""
.. include:: ../docs/README.md
"""

__version__ = "0.3.0"


# The model API (numpy/scipy heavy) loads on first attribute access so that
# steerlhv.log and the CLI helpers import without it.
_model_loaded = False
_loading = False


def __getattr__(name):
    global _model_loaded, _loading
    if _loading:
        raise AttributeError(f"module '{__name__}' has no attribute '{name}'")
    if not _model_loaded:
        _loading = True
        try:
            from . import model

            for attr in model.__all__:
                globals()[attr] = getattr(model, attr)
            _model_loaded = True
        finally:
            _loading = False
    if name not in globals():
        raise AttributeError(f"module '{__name__}' has no attribute '{name}'")
    return globals()[name]
