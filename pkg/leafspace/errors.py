class LeafSpaceError(ValueError):
    """
    Base error for malformed leaf spaces, flow specs, plane maps and files.
    """


class GraphValidationError(LeafSpaceError):
    def __init__(self, violations):
        self.violations = list(violations)
        codes = ", ".join(sorted({v.code for v in self.violations}))
        super().__init__(f"invalid leaf space ({codes})")


class ParseError(LeafSpaceError):
    def __init__(self, code: str, message: str, line: int = 0, column: int = 0):
        self.code = code
        self.message = message
        self.line = line
        self.column = column
        where = f" at line {line} column {column}" if line else ""
        super().__init__(f"{code}: {message}{where}")


class FlowSpecError(LeafSpaceError):
    def __init__(self, code: str, message: str):
        self.code = code
        super().__init__(f"{code}: {message}")


class PlaneMapError(LeafSpaceError):
    pass


class IntegratorError(ArithmeticError):
    def __init__(self, message: str, point=None, time=None):
        self.point = point
        self.time = time
        super().__init__(f"{message} (point={point}, t={time})")


class ContractionError(RuntimeError):
    pass
