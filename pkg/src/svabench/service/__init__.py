"""HTTP service and client."""

from .app import app, create_app
from .client import ServiceClient, ServiceError

__all__ = ["app", "create_app", "ServiceClient", "ServiceError"]
