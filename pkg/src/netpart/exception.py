import sys

from src.netpart.logger import logging


def error_message_detail(error, error_detail: sys):
    _, _, exc_tb = error_detail.exc_info()
    if exc_tb is None:
        return str(error)
    while exc_tb.tb_next is not None:
        exc_tb = exc_tb.tb_next
    file_name = exc_tb.tb_frame.f_code.co_filename
    error_message = "Error occured in python script name [{0}] line number [{1}] error message[{2}]".format(
        file_name, exc_tb.tb_lineno, str(error))

    return error_message


class CustomException(Exception):
    exit_code = 4

    def __init__(self, error_message, error_detail: sys = sys):
        super().__init__(error_message)
        self.error_message = error_message_detail(error_message, error_detail=error_detail)

    def __str__(self):
        return self.error_message


class InputError(CustomException):
    """Invalid instance data, out-of-range ids or oversized oracle requests."""
    exit_code = 2


class NetworkParseError(InputError):
    """Network file that does not parse into a valid problem."""

    def __init__(self, message: str, path: str | None = None,
                 line: int | None = None, column: int | None = None):
        self.path = path
        self.line = line
        self.column = column
        where = path or "<network>"
        if line is not None:
            where = f"{where}:{line}"
            if column is not None:
                where = f"{where}:{column}"
        super().__init__(f"{where}: {message}")
        self.error_message = f"{where}: {message}"


class InfeasibleProblemError(CustomException):
    exit_code = 3


class ContractViolation(CustomException):
    """A separator, callback or benchmark broke a solver contract."""
    exit_code = 4


class SolverFailure(CustomException):
    exit_code = 4
