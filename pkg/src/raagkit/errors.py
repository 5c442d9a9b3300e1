"""Exception hierarchy shared by the raagkit modules."""


class RaagError(ValueError):
    """Base class for every error raised by raagkit."""


class GraphError(RaagError):
    """An invalid defining graph (loop, dangling edge, bad label...)."""


class GraphParseError(GraphError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class UnknownVertexError(RaagError):
    def __init__(self, vertex: str):
        self.vertex = vertex
        super().__init__(f"unknown vertex {vertex!r}")


class WordParseError(RaagError):
    pass


class CompleteGraphError(RaagError):
    """The defining graph is complete, so the group is free abelian."""

    def __init__(self, message: str = "defining graph is complete: A is abelian"):
        super().__init__(message)


class NotInKernelError(RaagError):
    pass


class CertificateError(RaagError):
    pass
