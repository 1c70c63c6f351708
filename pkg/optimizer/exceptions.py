#!/usr/bin/env python


class SearchConfigError(ValueError):
    """Exception raised for an invalid or unreadable search configuration."""

    def __init__(self, message="Invalid search configuration."):
        self.message = message
        super().__init__(self.message)
