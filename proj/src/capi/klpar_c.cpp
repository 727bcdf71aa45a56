// C API implementation (see include/klpar.h); filled in after the core.
