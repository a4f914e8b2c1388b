class MotionLoomException(Exception):
    message: str
    error_code: int = 1

    def __init__(
        self,
        message: str | None = None,
        err_code: int | None = None,
        *args,
        **kwargs,
    ):
        if message:
            self.message = message
        if err_code:
            self.error_code = err_code
        super().__init__(self.formatted_message)

    def __str__(self):
        return f"{self.__class__.__name__}({self.formatted_message})"

    @property
    def formatted_message(self):
        return self.message.format(**self.__dict__)

    def one_line(self) -> str:
        escaped = self.formatted_message.replace('"', "'")
        return f'error={self.__class__.__name__} message="{escaped}"'


class InvalidArgument(MotionLoomException):
    message = "invalid argument: {detail}"
    detail: str

    def __init__(self, detail: str):
        self.detail = detail
        super().__init__(self.message, self.error_code)


class InsufficientHistory(MotionLoomException):
    message = "history of {available} frames is shorter than required {required}"
    available: int
    required: int

    def __init__(self, available: int, required: int):
        self.available = available
        self.required = required
        super().__init__(self.message, self.error_code)


class NumericFailure(MotionLoomException):
    message = "non-finite value in {where}"
    where: str

    def __init__(self, where: str):
        self.where = where
        super().__init__(self.message, self.error_code)


class ParseError(MotionLoomException):
    message = "parse error at byte {offset}: {detail}"
    offset: int
    detail: str

    def __init__(self, offset: int, detail: str):
        self.offset = offset
        self.detail = detail
        super().__init__(self.message, self.error_code)


class EmptySequence(MotionLoomException):
    message = "{detail}"
    detail: str

    def __init__(self, detail: str):
        self.detail = detail
        super().__init__(self.message, self.error_code)


class LoadError(MotionLoomException):
    message = "cannot load parameter {name}: {detail}"
    name: str
    detail: str

    def __init__(self, name: str, detail: str):
        self.name = name
        self.detail = detail
        super().__init__(self.message, self.error_code)


class ConfigError(MotionLoomException):
    message = "invalid config: {detail}"
    detail: str

    def __init__(self, detail: str):
        self.detail = detail
        super().__init__(self.message, self.error_code)


class FileAccessError(MotionLoomException):
    message = "cannot access {path}: {detail}"
    path: str
    detail: str

    def __init__(self, path: str, detail: str):
        self.path = path
        self.detail = detail
        super().__init__(self.message, self.error_code)
