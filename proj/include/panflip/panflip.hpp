#pragma once

// Prefix/suffix pancake sorting within 3k/2+O(1) flips, the pair-block
// potential machinery behind it, burnt-pancake state spaces, and exact BFS
// distance oracles over all four reversal graphs.

#include "panflip/io.hpp"
#include "panflip/oracle.hpp"
#include "panflip/perm.hpp"
#include "panflip/signed_perm.hpp"
#include "panflip/sorter.hpp"
#include "panflip/structure.hpp"
#include "panflip/verify.hpp"
