// SPDX-License-Identifier: Apache-2.0

#include <stdexcept>

#include "doctest.h"
#include "mmv2v/mac.hpp"
#include "mmv2v/rng.hpp"

using namespace mmv2v;

namespace {
MacTx make_mac(bool harq, int max_retx = 3) {
  return MacTx(harq, max_retx, 1096, 44, 0);
}
}  // namespace

TEST_CASE("idle slots transmit nothing") {
  MacTx mac = make_mac(false);
  CHECK_FALSE(mac.has_work());
  CHECK_FALSE(mac.next_tb(0).has_value());
  CHECK(mac.tx_attempts == 0);
}

TEST_CASE("one SDU per slot, FIFO order for same-slot arrivals") {
  MacTx mac = make_mac(false);
  mac.enqueue_sdu({0, 100});
  mac.enqueue_sdu({1, 101});
  CHECK(mac.queue_length() == 2);

  auto tb = mac.next_tb(5);
  REQUIRE(tb.has_value());
  CHECK(tb->rlc_sn == 0);
  CHECK(tb->packet_id == 100);
  CHECK(tb->tx_slot == 5);
  CHECK(tb->harq_attempt == 0);
  CHECK(tb->tb_bits == 1096);
  CHECK(tb->n_prb == 44);
  CHECK(mac.on_phy_result(true) == MacTx::Outcome::Delivered);

  tb = mac.next_tb(6);
  REQUIRE(tb.has_value());
  CHECK(tb->rlc_sn == 1);  // consecutive slots, FIFO
  CHECK(mac.on_phy_result(true) == MacTx::Outcome::Delivered);
  CHECK(mac.tx_attempts == 2);
  CHECK(mac.mac_drops == 0);
}

TEST_CASE("service keeps up with a 1 ms IPI at 4 slots per ms") {
  MacTx mac = make_mac(false);
  std::int64_t slot = 0;
  for (int pkt = 0; pkt < 100; ++pkt) {
    mac.enqueue_sdu({pkt, pkt});
    CHECK(mac.queue_length() <= 1);
    for (int s = 0; s < 4; ++s, ++slot) {
      if (auto tb = mac.next_tb(slot)) (void)mac.on_phy_result(true);
    }
  }
  CHECK(mac.queue_length() == 0);
  CHECK(mac.tx_attempts == 100);
}

TEST_CASE("without HARQ a PHY failure drops the PDU after one attempt") {
  MacTx mac = make_mac(false);
  mac.enqueue_sdu({0, 0});
  REQUIRE(mac.next_tb(0).has_value());
  CHECK(mac.on_phy_result(false) == MacTx::Outcome::Dropped);
  CHECK(mac.mac_drops == 1);
  CHECK(mac.tx_attempts == 1);
  CHECK_FALSE(mac.has_work());
}

TEST_CASE("with HARQ a failed attempt retransmits in the next slot") {
  MacTx mac = make_mac(true, 3);
  mac.enqueue_sdu({0, 0});

  auto tb = mac.next_tb(10);
  REQUIRE(tb.has_value());
  CHECK(tb->harq_attempt == 0);
  CHECK(tb->tx_slot == 10);
  CHECK(mac.on_phy_result(false) == MacTx::Outcome::RetxScheduled);
  CHECK(mac.has_work());

  tb = mac.next_tb(11);
  REQUIRE(tb.has_value());
  CHECK(tb->harq_attempt == 1);
  CHECK(tb->rlc_sn == 0);
  CHECK(mac.on_phy_result(false) == MacTx::Outcome::RetxScheduled);

  // Third attempt succeeds: the delivering transmission sits two slots after
  // the first one.
  tb = mac.next_tb(12);
  REQUIRE(tb.has_value());
  CHECK(tb->harq_attempt == 2);
  CHECK(tb->tx_slot == 12);
  CHECK(mac.on_phy_result(true) == MacTx::Outcome::Delivered);
  CHECK(mac.tx_attempts == 3);
  CHECK(mac.mac_drops == 0);
  CHECK_FALSE(mac.has_work());
}

TEST_CASE("HARQ gives up after 1 + max_retx attempts and moves on") {
  MacTx mac = make_mac(true, 3);
  mac.enqueue_sdu({0, 0});
  mac.enqueue_sdu({1, 1});
  for (std::int64_t s = 0; s < 3; ++s) {
    REQUIRE(mac.next_tb(s).has_value());
    CHECK(mac.on_phy_result(false) == MacTx::Outcome::RetxScheduled);
  }
  REQUIRE(mac.next_tb(3).has_value());  // 4th and last attempt
  CHECK(mac.on_phy_result(false) == MacTx::Outcome::Dropped);
  CHECK(mac.mac_drops == 1);
  CHECK(mac.tx_attempts == 4);

  // The next SDU is served immediately afterwards, leaving an SN gap at the
  // receiver.
  auto tb = mac.next_tb(4);
  REQUIRE(tb.has_value());
  CHECK(tb->rlc_sn == 1);
  CHECK(tb->harq_attempt == 0);
}

TEST_CASE("feedback without a transmission in flight is a wiring bug") {
  MacTx mac = make_mac(true);
  CHECK_THROWS_AS(mac.on_phy_result(true), std::logic_error);
  mac.enqueue_sdu({0, 0});
  REQUIRE(mac.next_tb(0).has_value());
  CHECK(mac.on_phy_result(true) == MacTx::Outcome::Delivered);
  CHECK_THROWS_AS(mac.on_phy_result(true), std::logic_error);
}

TEST_CASE("an unresolved transmission blocks new TBs but not the queue") {
  MacTx mac = make_mac(true);
  mac.enqueue_sdu({0, 0});
  REQUIRE(mac.next_tb(0).has_value());
  // Feedback still pending: nothing new goes out even though the queue holds
  // another SDU.
  mac.enqueue_sdu({1, 1});
  CHECK_FALSE(mac.next_tb(1).has_value());
  CHECK(mac.on_phy_result(true) == MacTx::Outcome::Delivered);
  CHECK(mac.next_tb(2).has_value());
}

TEST_CASE("queue overflow beyond 10^4 SDUs is fatal") {
  MacTx mac = make_mac(false);
  for (int i = 0; i < 10000; ++i) mac.enqueue_sdu({i, i});
  CHECK_THROWS_AS(mac.enqueue_sdu({10000, 10000}), std::runtime_error);
}

TEST_CASE("attempt conservation over randomized forced outcomes") {
  MacTx mac = make_mac(true, 2);
  RngStream rng(606, "phy-error");
  int enqueued = 0, delivered = 0, dropped = 0;
  std::int64_t slot = 0;
  for (int round = 0; round < 2000; ++round, ++slot) {
    if (round % 3 == 0) {
      mac.enqueue_sdu({enqueued, enqueued});
      ++enqueued;
    }
    if (auto tb = mac.next_tb(slot)) {
      switch (mac.on_phy_result(rng.bernoulli(0.6))) {
        case MacTx::Outcome::Delivered: ++delivered; break;
        case MacTx::Outcome::Dropped: ++dropped; break;
        case MacTx::Outcome::RetxScheduled: break;
      }
    }
  }
  // Drain whatever is still pending.
  while (mac.has_work()) {
    REQUIRE(mac.next_tb(slot++).has_value());
    switch (mac.on_phy_result(true)) {
      case MacTx::Outcome::Delivered: ++delivered; break;
      case MacTx::Outcome::Dropped: ++dropped; break;
      case MacTx::Outcome::RetxScheduled: break;
    }
  }
  CHECK(delivered + dropped == enqueued);
  CHECK(mac.mac_drops == dropped);
  CHECK(mac.queue_length() == 0);
}
