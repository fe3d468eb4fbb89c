"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input is well-formed but outside the mathematical domain of the operation.

    The command line maps these to exit code 1; malformed invocations
    (unknown flags, missing arguments) exit with 2 via argparse.
    """


class ParseError(DomainError):
    """A serialized object (complex file, barcode type string) does not parse."""
