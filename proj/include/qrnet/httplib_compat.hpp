#ifndef QRNET_HTTPLIB_COMPAT_HPP_
#define QRNET_HTTPLIB_COMPAT_HPP_

// Every translation unit must include httplib through this header: the
// feature macro changes struct layouts, so mixing configurations across TUs
// is an ODR violation.
#ifdef QRNET_HAVE_OPENSSL
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif

#include <httplib.h>

#endif // QRNET_HTTPLIB_COMPAT_HPP_
