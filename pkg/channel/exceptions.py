#!/usr/bin/env python

# Errors raised while reading or validating channel descriptions


class ChannelError(ValueError):
    """Base class for channel description problems."""

    def __init__(self, message="Invalid channel description."):
        self.message = message
        super().__init__(self.message)


class ChannelDocumentError(ChannelError):
    """Exception raised when a channel document cannot be read or has the wrong layout."""

    def __init__(self, message="Malformed channel document."):
        super().__init__(message)


class ChannelValidationError(ChannelError):
    """Exception raised when a state distribution is not a valid PMF."""

    def __init__(self, message="Channel PMF failed validation."):
        super().__init__(message)
