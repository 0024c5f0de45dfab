class PhotonSlhException(RuntimeError):
    pass


class ConfigError(PhotonSlhException):
    pass


class DimensionMismatch(PhotonSlhException):
    pass


class ModelError(PhotonSlhException):
    pass


class ModelFormatError(PhotonSlhException):

    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


class ValidationFailed(PhotonSlhException):

    def __init__(self, report):
        failed = ", ".join(report.failed_conditions) or "none"
        super().__init__(f"Model does not satisfy the single-photon linearity conditions; failed: {failed}")
        self.report = report


class SingularLoop(PhotonSlhException):
    pass


class GridTooShort(PhotonSlhException):

    def __init__(self, message, suggested_span):
        super().__init__(f"{message}; use a time window of at least {suggested_span:.6g}")
        self.suggested_span = suggested_span


class StepSizeUnstable(PhotonSlhException):
    pass


class MultiStageFilter(PhotonSlhException):
    pass
