class Control {
  int classify(int k) {
    switch (k) {
      case 1: return 10;
      case 2: return 20;
      case 3: return 30;
      default: return 0;
    }
  }

  int loopBreak(int n) {
    int i = 0;
    while (true) {
      i = i + 1;
      if (i > n) {
        break;
      }
      touch(i);
    }
    if (i > 0) {
      i = i - 1;
    }
    return i;
  }

  int guarded(int p) {
    if (p > 0) {
      return fetch(p);
    } else {
      return fallback(p);
    }
  }

  int mixed(int a) {
    int v = probe(a);
    if (a > 3) {
      v = v + 1;
    }
    return v;
  }
}
