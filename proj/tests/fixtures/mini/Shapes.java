class Shapes {
  int clip(int x, int lo, int hi) {
    return x < lo ? lo : x > hi ? hi : x;
  }

  boolean inRange(int x, int lo, int hi) {
    return x >= lo && x <= hi;
  }

  int countDown(int n) {
    int steps = 0;
    do {
      n = n - 1;
      steps = steps + 1;
    } while (n > 0);
    return steps;
  }

  int sumSquares(int n) {
    // accumulates i squared
    int total = 0;
    for (int i = 1; i <= n; i++) {
      total = total + i * i;
    }
    return total;
  }

  int safeDiv(int a, int b) {
    try {
      return a / b;
    } catch (ArithmeticException e) {
      return 0;
    }
  }

  void tick() {
    count++;
  }
}
