#!/usr/bin/env python

# Errors raised by the GF(2^8) coding layer


class ProtocolIntegrityError(RuntimeError):
    """Exception raised when received equations contradict each other."""

    def __init__(self, message="Inconsistent coded system: an equation reduced to 0 = nonzero payload."):
        self.message = message
        super().__init__(self.message)


class FieldArithmeticError(ZeroDivisionError):
    """Exception raised when inverting the zero element."""

    def __init__(self, message="Zero has no multiplicative inverse in GF(2^8)."):
        self.message = message
        super().__init__(self.message)
