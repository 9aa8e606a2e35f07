"""Exception types. Each carries the CLI exit code it maps to."""


class FanoForgeError(Exception):
    exit_code = 2


class InvalidInput(FanoForgeError, ValueError):
    exit_code = 2


class UnknownName(InvalidInput):
    def __init__(self, name, offset):
        super().__init__(f"unknown name {name!r} at offset {offset}")
        self.name = name
        self.offset = offset


class ClassSyntaxError(InvalidInput):
    def __init__(self, message, offset):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class AmbiguousRange(InvalidInput):
    """h^0 of a divisor is not determined by its degree alone."""


class Infeasible(FanoForgeError):
    exit_code = 3


class Inconsistent(FanoForgeError):
    exit_code = 1
