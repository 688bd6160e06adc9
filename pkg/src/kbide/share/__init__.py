"""Code sharing: export files to a durable record with a global link."""

from .store import (
    SHARE_SIZE_CAP,
    ExternalShareStore,
    LocalShareStore,
    MemoryShareStore,
    ShareError,
    ShareNotFound,
    ShareTooLarge,
    UpstreamError,
    new_share_id,
    payload_size,
)

__all__ = [
    "SHARE_SIZE_CAP",
    "ExternalShareStore",
    "LocalShareStore",
    "MemoryShareStore",
    "ShareError",
    "ShareNotFound",
    "ShareTooLarge",
    "UpstreamError",
    "new_share_id",
    "payload_size",
]
