#pragma once

// Single include point for cpp-httplib so every translation unit agrees on
// the TLS configuration.
#ifdef TOKSIG_HAVE_OPENSSL
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include <httplib.h>
