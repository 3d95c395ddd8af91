"""Exception types shared across the package."""


class KGraphError(Exception):
  """Base class for every error raised by khom."""


class CompositionNonzero(KGraphError):
  pass


class NotWellDefined(KGraphError):
  pass


class NotValidated(KGraphError):
  pass


class ValidationFailed(KGraphError):
  def __init__(self, report):
    super().__init__("; ".join(str(v) for v in report.violations[:5]))
    self.report = report


class IndexOutOfRange(KGraphError):
  pass


class BoundarySquareNonzero(KGraphError):
  pass


class NotFunctorial(KGraphError):
  pass


class NotAutomorphism(KGraphError):
  pass


class NotFree(KGraphError):
  def __init__(self, message, witness=None):
    super().__init__(message)
    self.witness = witness


class InfiniteIndex(KGraphError):
  pass


class NotChainMap(KGraphError):
  pass


class NotACycle(KGraphError):
  pass


class NotACocycle(KGraphError):
  pass


class RMaxExceeded(KGraphError):
  pass


class ParseError(KGraphError):
  def __init__(self, message, line=None, column=None):
    where = f"line {line}" if line is not None else ""
    if column is not None:
      where += f", column {column}"
    super().__init__(f"{where}: {message}" if where else message)
    self.line, self.column = line, column


class DuplicateName(ParseError):
  pass


class UnknownReference(ParseError):
  pass
