"""HTTP model server speaking the masksub attack wire protocol."""

from .app import create_app
from .config import ServerConfig

__version__ = "0.1.0"

__all__ = ["ServerConfig", "create_app", "__version__"]
