/** Formats ledger balances into fixed-width rows with a sign column. */
public class LedgerFmt {

    public static void main(String[] args) {
        long[] cents = {125000, -3199, 0, 999999, -250000};
        for (long c : cents) {
            System.out.println(row(c));
        }
    }

    static String row(long cents) {
        long magnitude = Math.abs(cents);
        String body = String.format("%d.%02d", magnitude / 100, magnitude % 100);
        String padded = " ".repeat(Math.max(0, 12 - body.length())) + body;
        if (cents > 0) {
            return "+" + padded;
        } else if (cents < 0) {
            return "-" + padded;
        } else {
            return " " + padded;
        }
    }
}
