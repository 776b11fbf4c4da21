#pragma once

#include "memdelay/certificates.hpp"
#include "memdelay/config.hpp"
#include "memdelay/dynamics.hpp"
#include "memdelay/energy.hpp"
#include "memdelay/errors.hpp"
#include "memdelay/io.hpp"
#include "memdelay/kernel.hpp"
#include "memdelay/scenario.hpp"
#include "memdelay/schedule.hpp"
#include "memdelay/spectrum.hpp"
#include "memdelay/state.hpp"
