#!/usr/bin/env python


class SimConfigError(ValueError):
    """Exception raised for an invalid simulation setup."""

    def __init__(self, message="Invalid simulation configuration."):
        self.message = message
        super().__init__(self.message)


class StateTraceExhausted(RuntimeError):
    """Exception raised when a replayed state trace ends before the trial does."""

    def __init__(self, message="State trace ended before both users decoded."):
        self.message = message
        super().__init__(self.message)
