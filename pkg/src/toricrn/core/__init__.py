# Core subpackage: logging, settings, constants, errors and timing shared by every other subpackage
