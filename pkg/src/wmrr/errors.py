"""Exception hierarchy shared by every wmrr module."""


class WMRRError(Exception):
    """Base class for all errors raised by this package."""


class UnknownAttribute(WMRRError):
    pass


class DegenerateFD(WMRRError):
    pass


class ParseFailure(WMRRError):
    pass


class SchemaMismatch(WMRRError):
    """A tuple or rule does not conform to the schema it is used with."""


class KindMismatch(WMRRError):
    pass


class NotMatching(WMRRError):
    pass


class EmptySupport(WMRRError):
    pass


class MalformedRuleFile(WMRRError):
    pass


class InconsistentRuleSet(WMRRError):
    pass


class Misaligned(WMRRError):
    pass


class MalformedCsv(WMRRError):
    pass


class RaggedRow(MalformedCsv):
    pass


class FdSyntaxError(WMRRError):
    pass


class ConfigError(WMRRError):
    pass
