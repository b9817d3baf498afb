class LinpbtError(Exception):
    pass


class ParseError(LinpbtError):
    def __init__(self, message, line=None, column=None, source=None):
        self.message = message
        self.line = line
        self.column = column
        self.source = source
        where = ""
        if line is not None:
            col = f":{column}" if column is not None else ""
            where = f"{source + ':' if source else ''}{line}{col}: "
        super().__init__(where + message)


class IllFormedGoal(LinpbtError):
    """A term that does not read as a goal."""


class Floundering(IllFormedGoal):
    """An unbound variable reached goal position."""


class InstantiationError(LinpbtError):
    """A built-in was called with insufficiently instantiated arguments."""


class UnsoundNegation(LinpbtError):
    """Negation-as-failure requested on a non-ground goal."""


class StepBudgetExceeded(LinpbtError):
    """The proof search went past its rule-application budget."""


class ConfigurationError(LinpbtError):
    pass


class ReplayMismatch(LinpbtError):
    pass


class MutantError(LinpbtError):
    pass
