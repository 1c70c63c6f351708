#!/usr/bin/env python


class AllocationError(ValueError):
    """Exception raised for an invalid packet allocation."""

    def __init__(self, message="Invalid packet allocation."):
        self.message = message
        super().__init__(self.message)
