import pathlib
import sys

# allow running the suite from a source checkout without installation
_SRC = pathlib.Path(__file__).resolve().parents[1] / "src"
if str(_SRC) not in sys.path:
    try:
        import prodkern  # noqa: F401
    except ImportError:
        sys.path.insert(0, str(_SRC))
