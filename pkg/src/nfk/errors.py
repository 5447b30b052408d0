"""Exception types.  The CLI maps them onto exit codes."""


class NfkError(Exception):
    exit_code = 2


class InputError(NfkError, ValueError):
    """Bad polynomial input: unparsable, non-monic or reducible."""


class IndexUnsafe(NfkError, ValueError):
    def __init__(self, p):
        super().__init__(f"prime divides index; splitting uncertified (p={p})")
        self.p = p


class ClassDataUnavailable(NfkError, RuntimeError):
    exit_code = 3

    def __init__(self, detail=""):
        msg = "class data unavailable"
        super().__init__(f"{msg}: {detail}" if detail else msg)


class BelowThreshold(NfkError, ValueError):
    pass


class NotPurelyImaginary(NfkError, ValueError):
    def __init__(self):
        super().__init__("not purely imaginary")


class InsufficientData(NfkError, ValueError):
    def __init__(self):
        super().__init__("insufficient data")


class LevelTooSmall(NfkError, ValueError):
    pass
