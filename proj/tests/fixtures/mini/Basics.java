class Basics {
  int add(int a, int b) {
    return a + b;
  }

  int constantOne() {
    return 1;
  }

  void noop() {
  }

  int sumTo(int n) {
    int s = 0;
    int i = 0;
    while (i < n) {
      if (n % 2 == 0) {
        s = s + i;
      } else {
        s = s - i;
      }
      i = i + 1;
    }
    return s;
  }
}
