"""Exception hierarchy shared by every pipeline stage."""


class RidgekitError(Exception):
    """Base class for all ridgekit errors."""


class UnsupportedFormat(RidgekitError, ValueError):
    pass


class CorruptImage(RidgekitError, ValueError):
    pass


class ZeroDimension(RidgekitError, ValueError):
    pass


class BadWindow(RidgekitError, ValueError):
    pass


class ImageTooSmall(RidgekitError, ValueError):
    pass


class FieldTooSmall(RidgekitError, ValueError):
    pass


class NoCoreFound(RidgekitError):
    """No orientation singularity strong enough to serve as the core."""


class BadRadius(RidgekitError, ValueError):
    pass


class NotThinned(RidgekitError, ValueError):
    """Skeleton still contains a 2x2 block of ridge pixels."""


class EmptyMinutiaeSet(RidgekitError, ValueError):
    pass


class BadDescriptorCount(RidgekitError, ValueError):
    pass


class TemplateFormatError(RidgekitError):
    """Base for template-file decoding failures."""


class BadMagic(TemplateFormatError):
    pass


class VersionMismatch(TemplateFormatError):
    pass


class ChecksumMismatch(TemplateFormatError):
    pass


class IncompatibleTemplates(RidgekitError, ValueError):
    pass


class EmptyDatabase(RidgekitError, ValueError):
    pass


class InsufficientData(RidgekitError, ValueError):
    pass


class ConfigError(RidgekitError, ValueError):
    pass
