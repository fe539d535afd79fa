"""
Exceptions/Errors that ncbvkit can raise
"""

class NcbvError(Exception):
    """
    Base class for all ncbvkit specific exceptions

    :param msg: Error message
    :type msg: str
    :param code: Error code
    :type code: int
    """
    def __init__(self, msg=None, code=0):
        super(NcbvError, self).__init__(msg)
        self.code = code

class DegeneratePairingError(NcbvError):
    """
    Pairing matrix is singular

    :param msg: Error message
    :type msg: str
    """
    def __init__(self, msg=None):
        super(DegeneratePairingError, self).__init__(msg)
        self.msg = msg

class PairingError(NcbvError):
    """
    Pairing violates parity or symmetry rules, or is not in the form an
    operation needs

    :param msg: Error message
    :type msg: str
    """
    def __init__(self, msg=None):
        super(PairingError, self).__init__(msg)
        self.msg = msg

class FlavorMismatchError(NcbvError):
    """
    Operands live over different spaces, flavors or algebras

    :param msg: Error message
    :type msg: str
    """
    def __init__(self, msg=None):
        super(FlavorMismatchError, self).__init__(msg)
        self.msg = msg

class UnknownLabelError(NcbvError):
    """
    Basis label not present in the graded space

    :param label: The offending label
    :type label: str
    :param msg: Error message
    :type msg: str
    """
    def __init__(self, label, msg=None):
        super(UnknownLabelError, self).__init__(msg)
        self.label = label
        self.msg = msg

    def __str__(self):
        return "unknown basis label {!r}".format(self.label)

class AlgebraError(NcbvError):
    """
    Structure constants, Lie elements or trace data are inconsistent

    :param msg: Error message
    :type msg: str
    """
    def __init__(self, msg=None):
        super(AlgebraError, self).__init__(msg)
        self.msg = msg

class ParseError(NcbvError):
    """
    Syntax error in the text grammar

    :param offset: Character offset of the error
    :type offset: int
    :param msg: Error message
    :type msg: str
    """
    def __init__(self, offset, msg=None):
        super(ParseError, self).__init__(msg)
        self.offset = offset
        self.msg = msg

    def __str__(self):
        return "parse error at offset {}: {}".format(self.offset, self.msg)

class InputError(NcbvError):
    """
    Malformed input document

    :param msg: Error message
    :type msg: str
    """
    def __init__(self, msg=None):
        super(InputError, self).__init__(msg)
        self.msg = msg

class DimensionCapError(NcbvError):
    """
    A configured size cap would be exceeded

    :param value: The size that was requested
    :type value: int
    :param msg: Error message
    :type msg: str
    """
    def __init__(self, value, msg=None):
        super(DimensionCapError, self).__init__(msg)
        self.value = value
        self.msg = msg

    def __str__(self):
        return "{} (requested size {})".format(self.msg, self.value)
