"""Closed-form contrastive Laplacian eigenmaps: Python bindings."""

from ._coles import *  # noqa: F401,F403

from .planetoid import load_planetoid  # noqa: F401
