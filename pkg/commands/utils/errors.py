class Error(Exception):
    """Base class for other exceptions"""
    pass

class InputError(Error):
    """Raised when user-supplied data cannot be parsed or is malformed"""

    def __init__(self, message, source=None, line=None, column=None):
        super().__init__(message)
        self.message = message
        self.source = source
        self.line = line
        self.column = column

    def diagnostic(self):
        where = [str(p) for p in (self.source, self.line, self.column) if p is not None]
        if where:
            return '{}: {}'.format(':'.join(where), self.message)
        return self.message

class PosetError(InputError):
    """Raised when a relation is not a partial order, or names are unknown"""

    def __init__(self, message, cycle=None):
        super().__init__(message)
        self.cycle = cycle

class SizeBoundError(InputError):
    """Raised when a structure exceeds the enumeration bound"""
    pass

class NotMonotoneError(InputError):
    """Raised when a candidate map does not preserve order"""

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair

class LatticeError(InputError):
    """Raised when a table is not a (distributive) lattice"""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness

class NucleusError(InputError):
    """Raised when a table fails one of the nucleus laws"""

    def __init__(self, message, law=None, witness=None):
        super().__init__(message)
        self.law = law
        self.witness = witness

class FunctorialityError(InputError):
    """Raised when restriction maps do not compose"""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness

class NotOpenError(InputError):
    """Raised when a subset expected to be open (a downset) is not"""
    pass

class DimensionError(InputError):
    """Raised when matrix shapes do not match the declared dimensions"""
    pass

class CommutativityError(InputError):
    """Raised when a square or cube face does not commute"""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness

class InternalConsistencyError(Error):
    """Raised when a check that holds by construction fails"""
    pass
